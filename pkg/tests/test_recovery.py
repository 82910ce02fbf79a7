import dataclasses
import random

import pytest
from hypothesis import given, settings, strategies as st

from sparsehard.dimacs import CNFFormula, random_unique_formula, random_unsat_formula
from sparsehard.field import build_field, gf_mul, poly_eval
from sparsehard.recovery import (
    ConstantBound,
    FieldValueNotBoolean,
    LTuple,
    NoAssignmentFound,
    RecoveryInstance,
    brute_force_membership,
    brute_force_unique_assignment,
    candidate_order,
    choose_m,
    collect_candidate_words,
    distinct_u,
    harness_instance,
    harness_reduction,
    recover_assignment,
)

S = ("0000", "0001")
X1_NOT_X2 = CNFFormula(2, ((1,), (-2,)))


def test_choose_m_examples():
    assert choose_m(8, 10, ConstantBound(4)) == 6
    assert choose_m(1, 10, ConstantBound(2)) == 2
    assert choose_m(5, 10, lambda n_prime, m: m ** 3 + n_prime) == 18
    with pytest.raises(ValueError):
        choose_m(0, 1, ConstantBound(2))


def test_tuple_encoding_is_injective_on_fields():
    a = LTuple(X1_NOT_X2, 2, 1, 2).encode()
    b = LTuple(X1_NOT_X2, 2, 2, 1).encode()
    assert a != b


def test_harness_contract():
    f = harness_reduction(5, set(S), brute_force_membership)
    ctx = build_field(2)
    for u in ctx.elements():
        for v in ctx.elements():
            t = LTuple(X1_NOT_X2, 2, u, v)
            out = f(t)
            assert bool(out & set(S)) == brute_force_membership(t)
            assert all(len(w) <= 48 for w in out)
            assert f(t) == out  # deterministic


def test_planted_word_supported_by_every_u():
    inst = harness_instance(X1_NOT_X2, 5, S)
    ctx = build_field(2)
    support = collect_candidate_words(inst, ctx)
    planted = [w for w in support if w in S]
    assert len(planted) == 1
    assert set(distinct_u(support[planted[0]])) == set(ctx.elements())
    assert candidate_order(support, 2) == planted


def test_fresh_words_never_qualify():
    phi = X1_NOT_X2
    fresh = lambda t: frozenset({f"1{t.u:02b}{t.v:02b}"})
    inst = RecoveryInstance.of(phi, fresh, S, ConstantBound(2), ConstantBound(8))
    support = collect_candidate_words(inst, build_field(2))
    assert candidate_order(support, 2) == []
    with pytest.raises(NoAssignmentFound):
        recover_assignment(inst)


def test_distinct_u_counting():
    assert distinct_u([(1, 3), (1, 0), (2, 2)]) == {1: 0, 2: 2}
    support = {"1": [(0, 0), (0, 1), (0, 2)]}
    assert candidate_order(support, 2) == []
    assert candidate_order(support, 1) == ["1"]


def test_recover_simple_formula():
    assert brute_force_unique_assignment(X1_NOT_X2) == (1, 0)
    assert recover_assignment(harness_instance(X1_NOT_X2, 3, S)) == [1, 0]


def test_recover_unsat_formula():
    phi = CNFFormula(2, ((1,), (-1,)))
    with pytest.raises(NoAssignmentFound):
        recover_assignment(harness_instance(phi, 3, S))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 9), st.integers(1, 6))
def test_recover_agrees_with_brute_force(seed, n):
    rng = random.Random(seed)
    phi = random_unique_formula(rng, n)
    got = recover_assignment(harness_instance(phi, seed, S))
    assert tuple(got) == brute_force_unique_assignment(phi)
    assert phi.evaluate(got)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 9), st.integers(1, 4))
def test_unsat_mix_raises(seed, n):
    phi = random_unsat_formula(random.Random(seed), n)
    with pytest.raises(NoAssignmentFound):
        recover_assignment(harness_instance(phi, seed, S))


def test_forced_m_must_satisfy_bound():
    inst = harness_instance(random_unique_formula(random.Random(1), 6), 1, S)
    with pytest.raises(ValueError, match="violates"):
        recover_assignment(inst, m=2)


@pytest.mark.parametrize("m, sample", [(2, None), (6, 12)])
def test_uniqueness_transfer(m, sample):
    ctx = build_field(m)
    rng = random.Random(m)
    for seed in range(5):
        phi = random_unique_formula(random.Random(seed), 4)
        (a,) = phi.satisfying_assignments()
        us = list(ctx.elements()) if sample is None else rng.sample(range(ctx.order), sample)
        for u in us:
            members = [v for v in ctx.elements() if brute_force_membership(LTuple(phi, m, u, v))]
            assert members == [poly_eval(ctx, a, u)]


def test_decoy_word_rejected_by_verification():
    base = harness_reduction(2, set(S), brute_force_membership)
    decoy = "111"  # not in S, emitted for every tuple, sorts before the planted word
    inst = RecoveryInstance.of(X1_NOT_X2, lambda t: base(t) | {decoy}, S, ConstantBound(2), ConstantBound(48))
    support = collect_candidate_words(inst, build_field(2))
    assert candidate_order(support, 2)[0] == decoy
    assert recover_assignment(inst) == [1, 0]


def test_decoy_only_reductions_fail():
    const = lambda t: frozenset({"111"})
    inst = RecoveryInstance.of(X1_NOT_X2, const, S, ConstantBound(2), ConstantBound(8))
    with pytest.raises(NoAssignmentFound):
        recover_assignment(inst)

    ctx = build_field(2)
    skew = lambda t: frozenset({"111"}) if t.v == gf_mul(ctx, t.u, 2) else frozenset({f"1{t.u:02b}{t.v:02b}0"})
    inst = RecoveryInstance.of(X1_NOT_X2, skew, S, ConstantBound(2), ConstantBound(8))
    with pytest.raises(FieldValueNotBoolean):
        recover_assignment(inst)


def test_membership_only_through_reduction():
    assert "membership_oracle" not in {f.name for f in dataclasses.fields(RecoveryInstance)}
    inside = [False]
    calls = [0]

    def oracle(t):
        assert inside[0], "oracle consulted outside the reduction"
        calls[0] += 1
        return brute_force_membership(t)

    base = harness_reduction(4, set(S), oracle)

    def f(t):
        inside[0] = True
        try:
            return base(t)
        finally:
            inside[0] = False

    inst = RecoveryInstance.of(X1_NOT_X2, f, S, ConstantBound(2), ConstantBound(48))
    assert recover_assignment(inst) == [1, 0]
    assert calls[0] == 16
