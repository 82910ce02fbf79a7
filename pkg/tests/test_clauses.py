import pytest
from hypothesis import given, strategies as st

from sparsehard.clauses import (
    AntiHornClause,
    ArityError,
    clause_satisfied,
    derives_clause,
    derives_formula,
    format_formula,
    formula_satisfied,
    parse_formula,
    words_upto,
)

from conftest import C

A, B, CW = "0", "1", "00"  # stand-ins for the words a, b, c


def test_words_upto_is_length_lex():
    assert list(words_upto(2)) == ["", "0", "1", "00", "01", "10", "11"]
    assert len(list(words_upto(5))) == 2 ** 6 - 1


@pytest.mark.parametrize(
    "g, d, expected",
    [
        ((A, {A}), (A, {A, B}), True),
        ((A, {B}), (CW, set()), True),
        ((A, {B, CW}), (A, {B}), False),
    ],
)
def test_derives_clause_examples(g, d, expected):
    assert derives_clause(AntiHornClause.make(*g), AntiHornClause.make(*d)) is expected


def test_derives_formula_examples():
    a_empty = AntiHornClause.make(A)
    a_b = AntiHornClause.make(A, {B})
    assert derives_formula({a_empty}, {a_b, a_empty})
    assert derives_formula({a_b}, set())
    assert derives_formula(set(), set())
    assert not derives_formula(set(), {a_b})


@pytest.mark.parametrize(
    "c, S, expected",
    [
        ((A, {B, CW}), {A, CW}, True),
        ((A, set()), {A}, False),
        ((A, {B}), set(), True),
    ],
)
def test_clause_satisfied_examples(c, S, expected):
    assert clause_satisfied(AntiHornClause.make(*c), S) is expected


def test_formula_satisfied_examples():
    assert formula_satisfied(set(), set())
    assert formula_satisfied({AntiHornClause.make(A), AntiHornClause.make(B, {CW})}, {CW})
    assert not formula_satisfied({AntiHornClause.make(A)}, {A})


def test_arity_enforced_in_bounded_context():
    AntiHornClause.make(A, {A, B})
    with pytest.raises(ArityError):
        AntiHornClause.make(A, {A, B}, k=1)
    with pytest.raises(ArityError):
        AntiHornClause.parse("0 -> 0|1", k=1)


def test_bad_words_rejected():
    with pytest.raises(ValueError):
        AntiHornClause.make("012")
    with pytest.raises(ValueError):
        AntiHornClause.parse("0 1")
    with pytest.raises(ValueError):
        AntiHornClause.parse("0 -> 1|1")


def test_text_form():
    assert str(AntiHornClause.make("", {"1", "0"})) == "_ -> 0|1"
    assert str(AntiHornClause.make("10")) == "10 ->"
    assert C("_ -> _|01") == AntiHornClause.make("", {"", "01"})
    f = parse_formula("1 -> 0; _ ->; 0 -> 1|00")
    assert format_formula(f) == "_ ->; 0 -> 1|00; 1 -> 0"


# -- properties --------------------------------------------------------------

words = st.text(alphabet="01", max_size=3)
clauses = st.builds(AntiHornClause.make, words, st.frozensets(words, max_size=3))
formulas = st.frozensets(clauses, max_size=5)
sets = st.frozensets(words, max_size=6)


@given(clauses)
def test_text_round_trip(c):
    assert AntiHornClause.parse(str(c)) == c


@given(formulas)
def test_formula_text_round_trip(f):
    assert parse_formula(format_formula(f)) == f


@given(clauses)
def test_derives_reflexive(c):
    assert derives_clause(c, c)


@given(words, st.frozensets(words, max_size=3), st.frozensets(words, max_size=3), st.frozensets(words, max_size=3))
def test_derives_transitive_on_shared_lhs(z, r1, r2, r3):
    g, h, d = (AntiHornClause.make(z, r) for r in (r1, r2, r3))
    if derives_clause(g, h) and derives_clause(h, d):
        assert derives_clause(g, d)


@given(formulas, formulas, formulas)
def test_derives_formula_monotone_in_G(G, extra, D):
    if derives_formula(G, D):
        assert derives_formula(G | extra, D)


@given(words, st.frozensets(words, max_size=3), st.frozensets(words, max_size=3), sets)
def test_derivation_sound_on_equal_lhs(z, r1, r2, S):
    # With equal left-hand sides, g |- d means g is the stronger clause.
    g, d = AntiHornClause.make(z, r1), AntiHornClause.make(z, r2)
    if derives_clause(g, d) and clause_satisfied(g, S):
        assert clause_satisfied(d, S)


@given(formulas, formulas, sets)
def test_satisfaction_is_conjunction(F1, F2, S):
    assert formula_satisfied(F1 | F2, S) == (formula_satisfied(F1, S) and formula_satisfied(F2, S))


@given(clauses, sets, sets)
def test_rhs_growth_preserves_satisfaction(c, S, more):
    if clause_satisfied(c, S):
        wider = AntiHornClause.make(c.lhs, c.rhs | more)
        assert clause_satisfied(wider, S)
