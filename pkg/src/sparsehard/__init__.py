"""Desk-scale simulation of learning k-anti-Horn forecasts from sparse-set
reductions, the bounded-CNF transform, and finite-field assignment recovery."""

from .clauses import (
    AntiHornClause,
    clause_satisfied,
    derives_clause,
    derives_formula,
    formula,
    formula_satisfied,
)
from .learner import FormulaList, answer_query_trace, forecast, learn_all, learn_sat
from .world import Poly, SparseWorld, TargetLanguage, decide_membership, generate_world

__version__ = "0.1.0"
