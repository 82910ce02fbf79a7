"""Recover the unique satisfying assignment of a formula from a disjunctive
reduction to a sparse set.

The reduction ``f`` maps a tuple ``<phi, 1^m, u, v>`` (u, v in GF(2^m)) to a
set of words, read as their disjunction.  The tuple is in the language iff
some satisfying assignment ``a`` of phi has ``sum_j a_j u^j = v``.  When phi
has a single solution every ``u`` has exactly one matching ``v``, so one
sparse-set word is shared by many ``u``-columns; any ``n`` of them pin ``a``
down through a Vandermonde system.
"""

from __future__ import annotations

import hashlib
import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import AbstractSet, Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .clauses import Word, word_key
from .dimacs import CNFFormula
from .field import FieldCtx, build_field, is_field_degree, poly_eval, solve_vandermonde
from .transforms import encode_tuple

Bound = Callable[[int, int], int]  # (formula size n', field degree m) -> int


class NoAssignmentFound(Exception):
    """No candidate word produced a verified assignment."""


class FieldValueNotBoolean(NoAssignmentFound):
    """Every candidate's solution had a coefficient outside {0, 1}."""


@dataclass(frozen=True)
class LTuple:
    """The tuple <phi, 1^m, u, v> queried against the reduction."""

    phi: CNFFormula
    m: int
    u: int
    v: int

    def encode(self) -> Word:
        return encode_tuple([_formula_word(self.phi), "1" * self.m, format(self.u, f"0{self.m}b"), format(self.v, f"0{self.m}b")])


@lru_cache(maxsize=1024)
def _formula_word(phi: CNFFormula) -> Word:
    return "".join(format(b, "08b") for b in phi.to_dimacs().encode())


def tuple_digest(t: LTuple) -> str:
    """Short stable fingerprint of ``t.encode()``."""
    return f"{_formula_digest(t.phi)}:{t.m}:{t.u}:{t.v}"


@lru_cache(maxsize=1024)
def _formula_digest(phi: CNFFormula) -> str:
    return hashlib.sha256(_formula_word(phi).encode()).hexdigest()


Reduction = Callable[[LTuple], FrozenSet[Word]]


@dataclass(frozen=True)
class ConstantBound:
    value: int

    def __call__(self, n_prime: int, m: int) -> int:
        return self.value


@dataclass(frozen=True)
class RecoveryInstance:
    phi: CNFFormula
    n_prime: int
    reduction_f: Reduction
    S: FrozenSet[Word]
    p: Bound
    q: Bound

    @classmethod
    def of(cls, phi: CNFFormula, reduction_f: Reduction, S: Iterable[Word], p: Bound, q: Bound) -> "RecoveryInstance":
        return cls(phi, phi.size, reduction_f, frozenset(S), p, q)


FIELD_DEGREES = tuple(2 * 3 ** l for l in range(6))


def choose_m(n: int, n_prime: int, p: Bound) -> int:
    """Smallest m = 2*3^l with 2^m / p(n', m) >= n."""
    if n < 1:
        raise ValueError("need at least one variable")
    for l in itertools.count():
        m = 2 * 3 ** l
        if (1 << m) >= n * p(n_prime, m):
            return m
    raise AssertionError("unreachable")


def m_supports(n: int, n_prime: int, p: Bound, m: int) -> bool:
    return is_field_degree(m) and (1 << m) >= n * p(n_prime, m)


def collect_candidate_words(inst: RecoveryInstance, ctx: FieldCtx) -> Dict[Word, List[Tuple[int, int]]]:
    """For each emitted word, every (u, v) whose reduction output contains it."""
    support: Dict[Word, List[Tuple[int, int]]] = defaultdict(list)
    for u in ctx.elements():
        for v in ctx.elements():
            for w in inst.reduction_f(LTuple(inst.phi, ctx.m, u, v)):
                support[w].append((u, v))
    return dict(support)


def distinct_u(pairs: Iterable[Tuple[int, int]]) -> Dict[int, int]:
    """u -> smallest v among the pairs."""
    best: Dict[int, int] = {}
    for u, v in pairs:
        if u not in best or v < best[u]:
            best[u] = v
    return best


def candidate_order(support: Dict[Word, List[Tuple[int, int]]], n: int) -> List[Word]:
    """Words backed by >= n distinct u's, most support first, then length-lex."""
    counts = {w: len(distinct_u(pairs)) for w, pairs in support.items()}
    return sorted((w for w, c in counts.items() if c >= n), key=lambda w: (-counts[w], word_key(w)))


def recover_assignment(inst: RecoveryInstance, m: Optional[int] = None) -> List[int]:
    phi = inst.phi
    n = phi.n_vars
    if m is None:
        m = choose_m(n, inst.n_prime, inst.p)
    elif not m_supports(n, inst.n_prime, inst.p, m):
        raise ValueError(f"m = {m} violates 2^m / p(n', m) >= n for n = {n}")
    ctx = build_field(m)
    support = collect_candidate_words(inst, ctx)
    tried = not_boolean = 0
    for w in candidate_order(support, n):
        chosen = sorted(distinct_u(support[w]).items())[:n]
        us = [u for u, _ in chosen]
        vs = [v for _, v in chosen]
        coeffs = solve_vandermonde(ctx, us, vs)
        tried += 1
        if any(a not in (0, 1) for a in coeffs):
            not_boolean += 1
            continue
        if phi.evaluate(coeffs):
            return list(coeffs)
    if tried and not_boolean == tried:
        raise FieldValueNotBoolean(f"all {tried} candidate solutions left {{0, 1}}")
    raise NoAssignmentFound(f"{tried} candidate words, none gave a satisfying assignment")


# -- a concrete reduction for experiments -------------------------------------


_field = lru_cache(maxsize=None)(build_field)


@lru_cache(maxsize=None)
def _solution_values(phi: CNFFormula, m: int, u: int) -> FrozenSet[int]:
    ctx = _field(m)
    return frozenset(poly_eval(ctx, a, u) for a in phi.satisfying_assignments())


def brute_force_membership(t: LTuple) -> bool:
    """Decide <phi, 1^m, u, v> in L by enumerating phi's assignments."""
    return is_field_degree(t.m) and t.v in _solution_values(t.phi, t.m, t.u)


def _hash_bits(text: str, nbits: int) -> Word:
    digest = hashlib.sha256(text.encode()).digest()
    return format(int.from_bytes(digest, "big") >> (256 - nbits), f"0{nbits}b")


def harness_reduction(
    seed: int,
    S: AbstractSet[Word],
    membership_oracle: Callable[[LTuple], bool],
    word_length: int = 48,
) -> Reduction:
    """A disjunctive reduction of L to S that is correct by construction.

    Members map to ``{s*}`` with ``s*`` drawn from S by hashing
    ``(seed, phi, m)``; non-members map to one fresh word outside S, hashed
    from the tuple.  Fresh words have exactly ``word_length`` bits.
    """
    if not S:
        raise ValueError("the sparse set must be nonempty")
    members = sorted(S, key=word_key)
    S = frozenset(S)

    @lru_cache(maxsize=None)
    def planted(phi: CNFFormula, m: int) -> Word:
        h = int(_hash_bits(f"star:{seed}:{phi.to_dimacs()}:{m}", 64), 2)
        return members[h % len(members)]

    def f(t: LTuple) -> FrozenSet[Word]:
        if membership_oracle(t):
            return frozenset({planted(t.phi, t.m)})
        salt = 0
        while True:
            w = _hash_bits(f"fresh:{seed}:{salt}:{tuple_digest(t)}", word_length)
            if w not in S:
                return frozenset({w})
            salt += 1

    return f


def harness_instance(phi: CNFFormula, seed: int, S: Sequence[Word], word_length: int = 48) -> RecoveryInstance:
    """Wire phi to the harness reduction with constant bounds p = |S|, q = word_length."""
    f = harness_reduction(seed, frozenset(S), brute_force_membership, word_length)
    bound = max(2, len(set(S)))
    return RecoveryInstance.of(phi, f, S, ConstantBound(bound), ConstantBound(word_length))


def brute_force_unique_assignment(phi: CNFFormula) -> Optional[Tuple[int, ...]]:
    sols = phi.satisfying_assignments()
    return sols[0] if len(sols) == 1 else None
