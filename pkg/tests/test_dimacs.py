import random

import pytest
from hypothesis import given, settings, strategies as st

from sparsehard.dimacs import CNFFormula, parse_dimacs, random_unique_formula, random_unsat_formula


def test_parse_round_trip():
    text = "c a comment\np cnf 3 2\n1 -2 0\n2 3\n-1 0\n"
    f = parse_dimacs(text)
    assert f == CNFFormula(3, ((1, -2), (2, 3, -1)))
    assert parse_dimacs(f.to_dimacs()) == f
    assert f.size == 3 + 5


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_dimacs("1 2 0\n")
    with pytest.raises(ValueError):
        parse_dimacs("p cnf 2 3\n1 2 0\n")
    with pytest.raises(ValueError):
        parse_dimacs("p cnf 2 1\n1 5 0\n")


def test_evaluate():
    f = CNFFormula(2, ((1,), (-2,)))
    assert [a for a in f.assignments() if f.evaluate(a)] == [(1, 0)]


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 9), st.integers(1, 6))
def test_random_unique_formula(seed, n):
    f = random_unique_formula(random.Random(seed), n)
    assert len(f.satisfying_assignments()) == 1


@settings(max_examples=20)
@given(st.integers(0, 10 ** 9), st.integers(1, 6))
def test_random_unsat_formula(seed, n):
    assert random_unsat_formula(random.Random(seed), n).satisfying_assignments() == []
