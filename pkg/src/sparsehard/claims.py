"""Independent checks of the learner's correctness claims.

Each checker returns a dict mapping a claim name to a bool.  Names are
stable; reports and summaries key on them.
"""

from __future__ import annotations

from typing import Dict

from .clauses import derives_clause, derives_formula, formula_satisfied, words_upto
from .learner import FormulaList, LearnState, forecast
from .world import SparseWorld, TargetLanguage

A_CHECKS = (
    "A1.i cardinality",
    "A1.ii word-length",
    "A1.iii lhs",
    "A1.iv antichain",
    "A2 packing",
    "A3 termination",
    "A3 weight",
    "A.ii satisfied",
    "A.iii covers",
)
B_CHECKS = ("B1 passes", "B1 new-lhs", "B2 equivalence", "B2 levels")


def _a1_ok(gamma, z, n, world: SparseWorld, cap: int) -> Dict[str, bool]:
    length_bound = max(world.q(n), len(z))
    return {
        "A1.i cardinality": 1 <= len(gamma) <= cap and all(c.arity <= world.k for c in gamma),
        "A1.ii word-length": all(len(w) <= length_bound for c in gamma for w in c.words()),
        "A1.iii lhs": all(c.lhs == z for c in gamma),
        "A1.iv antichain": all(g1 == g2 or not derives_clause(g1, g2) for g1 in gamma for g2 in gamma),
    }


def check_learn_sat(state: LearnState, world: SparseWorld, T: TargetLanguage) -> Dict[str, bool]:
    """Verify a finished ``learn_sat`` run, pass by pass, against brute force."""
    z, n, cap = state.z, state.n, state.cap
    result = _a1_ok(state.gamma, z, n, world, cap)
    sat_ok = True
    packing_ok = True
    for rec in state.trace:
        for name, ok in _a1_ok(rec.gamma, z, n, world, cap).items():
            result[name] = result[name] and ok
        sat_ok = sat_ok and formula_satisfied(rec.gamma, world.S)
        if rec.packed:
            alpha, beta, gamma = rec.packed
            packing_ok = packing_ok and (
                beta != gamma
                and derives_clause(alpha, beta)
                and derives_clause(alpha, gamma)
                and alpha.lhs == beta.lhs == gamma.lhs == z
                and formula_satisfied({alpha}, world.S)
            )
    weights = state.weight_trace
    top = state.pass_bound
    result["A2 packing"] = packing_ok
    result["A3 termination"] = state.pass_count <= top
    result["A3 weight"] = all(a < b for a, b in zip(weights, weights[1:])) and all(w <= top for w in weights)
    result["A.ii satisfied"] = sat_ok and formula_satisfied(state.gamma, world.S)
    result["A.iii covers"] = all(
        derives_formula(state.gamma, world.reduction(x)) for x in words_upto(n) if x in T
    )
    return result


def check_learn_all(L: FormulaList, world: SparseWorld, T: TargetLanguage) -> Dict[str, bool]:
    passes_ok, new_lhs_ok = True, True
    for i, recs in L.passes.items():
        bound = world.p(world.q(i))
        passes_ok = passes_ok and len(recs) <= bound
        seen = set()
        for rec in recs:
            fresh = [
                v for v in rec.lhs_words if v in world.S and len(v) <= world.q(i) and v not in seen
            ]
            new_lhs_ok = new_lhs_ok and bool(fresh)
            seen.update(rec.lhs_words)
    equiv = all(forecast(x, L, world) == (x in T) for x in words_upto(L.horizon))
    levels_ok = all(
        all(derives_formula(G, world.reduction(x)) for G in level) == (x in T)
        for j, level in L.levels.items()
        for x in words_upto(j)
    )
    return {
        "B1 passes": passes_ok,
        "B1 new-lhs": new_lhs_ok,
        "B2 equivalence": equiv,
        "B2 levels": levels_ok,
    }
