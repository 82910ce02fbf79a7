"""Learning k-anti-Horn forecasts from a membership oracle.

``learn_sat`` grows a formula over a single left-hand side ``z`` that derives
every member's reduction formula while staying satisfied by the hidden sparse
set; ``learn_all`` collects such formulas until every non-member is refuted.
The learner never reads ``world.S`` to make a decision: it uses only the
polynomial bounds, the arity, the reduction and the oracle.  ``S`` appears
solely in contract checks.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .clauses import (
    AntiHornClause,
    AntiHornFormula,
    ArityError,
    Word,
    clause_satisfied,
    derives_clause,
    derives_formula,
    format_formula,
    formula_satisfied,
    word_key,
)
from .world import OutOfRange, SparseWorld, TargetLanguage, smallest_counterexample_A, smallest_counterexample_B


class ContractError(ValueError):
    """A caller broke a documented precondition."""


class InternalConsistencyError(RuntimeError):
    """A state the correctness argument rules out was reached."""


@dataclass(frozen=True)
class PassRecord:
    index: int
    x_hat: Word
    delta: AntiHornClause
    packed: Optional[Tuple[AntiHornClause, AntiHornClause, AntiHornClause]]
    gamma: AntiHornFormula
    weight: int

    @property
    def action(self) -> str:
        return "pack" if self.packed else "extend"

    def to_dict(self) -> dict:
        d = {
            "pass": self.index,
            "x_hat": self.x_hat,
            "size": len(self.gamma),
            "weight": self.weight,
            "action": self.action,
            "clause": str(self.delta),
        }
        if self.packed:
            alpha, beta, gamma = self.packed
            d["alpha"], d["beta"], d["gamma"] = str(alpha), str(beta), str(gamma)
        return d


@dataclass
class LearnState:
    z: Word
    n: int
    k: int
    base: int  # p(q(n))
    gamma: AntiHornFormula
    pass_count: int = 0
    weight_trace: List[int] = field(default_factory=list)
    trace: List[PassRecord] = field(default_factory=list)

    @property
    def cap(self) -> int:
        return self.base ** (self.k + 1)

    @property
    def pass_bound(self) -> int:
        return (self.cap + 1) ** self.k


def weight_base(world: SparseWorld, n: int) -> int:
    return world.p(world.q(n))


def clause_weight(c: AntiHornClause, n: int, world: SparseWorld) -> int:
    if c.arity > world.k:
        raise ArityError(f"clause {c} exceeds arity bound {world.k}")
    return (weight_base(world, n) ** (world.k + 1) + 1) ** (world.k - c.arity)


def formula_weight(F: AntiHornFormula, n: int, world: SparseWorld) -> int:
    return sum(clause_weight(c, n, world) for c in F)


def _two_smallest(clauses) -> Tuple[AntiHornClause, AntiHornClause]:
    ordered = sorted(clauses, key=AntiHornClause.sort_key)
    return ordered[0], ordered[1]


def packing_choose(state: LearnState, world: SparseWorld):
    """Choose ``(alpha, beta, gamma)`` when the formula has reached its size cap.

    Greedily builds ``alpha = (z -> y1 | ... | yj)`` from the most frequent
    right-hand-side words of the largest over-full arity class, stopping once
    the next word would be shared by fewer than a ``1/p(q(n))`` fraction of
    the clauses still covered.  Ties go to the length-lex smallest word.
    """
    G, z, base, k = state.gamma, state.z, state.base, state.k
    if len(G) != base ** (k + 1):
        raise ContractError(f"packing needs |Γ| = {base ** (k + 1)}, got {len(G)}")
    if not formula_satisfied(G, world.S):
        raise ContractError("packing needs Γ to be satisfied by S")

    by_arity: Dict[int, List[AntiHornClause]] = {i: [] for i in range(k + 1)}
    for c in G:
        by_arity[c.arity].append(c)
    over = [m for m in range(1, k + 1) if len(by_arity[m]) > base ** m]
    if not over:
        raise InternalConsistencyError("no arity class exceeds its share; Γ is not an antichain")
    top = by_arity[max(over)]

    chosen: List[Word] = []
    while True:
        alpha = AntiHornClause(z, frozenset(chosen))
        covered = [c for c in top if derives_clause(alpha, c)]
        freq = Counter(w for c in covered for w in c.rhs if w not in alpha.rhs)
        n_j = max(freq.values(), default=0)
        if n_j * base < len(covered):
            break
        chosen.append(min((w for w, f in freq.items() if f == n_j), key=word_key))

    if len(covered) < 2:
        raise InternalConsistencyError(f"packing left {len(covered)} covered clauses")
    beta, gamma = _two_smallest(covered)
    if not clause_satisfied(alpha, world.S):
        raise InternalConsistencyError(f"packed clause {alpha} is not satisfied by S")
    return alpha, beta, gamma


def learn_sat_traced(world: SparseWorld, T: TargetLanguage, n: int, z: Word) -> LearnState:
    if n > world.n_max:
        raise OutOfRange(f"n = {n} exceeds n_max = {world.n_max}")
    base = weight_base(world, n)
    state = LearnState(z=z, n=n, k=world.k, base=base, gamma=frozenset({AntiHornClause(z, frozenset({z}))}))
    for _ in range(state.pass_bound + 1):
        x_hat = smallest_counterexample_A(T, n, state.gamma)
        if x_hat is None:
            return state
        G = state.gamma
        open_clauses = [d for d in world.reduction(x_hat) if not any(derives_clause(g, d) for g in G)]
        delta = min(open_clauses, key=AntiHornClause.sort_key)
        G = frozenset(g for g in G if not derives_clause(delta, g)) | {delta}
        state.gamma = G
        packed = None
        if len(G) == state.cap:
            packed = packing_choose(state, world)
            alpha = packed[0]
            state.gamma = frozenset(g for g in G if not derives_clause(alpha, g)) | {alpha}
        state.pass_count += 1
        w = formula_weight(state.gamma, n, world)
        state.weight_trace.append(w)
        state.trace.append(PassRecord(state.pass_count, x_hat, delta, packed, state.gamma, w))
    raise InternalConsistencyError(f"learn_sat(n={n}, z={z!r}) ran past its pass bound")


def learn_sat(world: SparseWorld, T: TargetLanguage, n: int, z: Word) -> AntiHornFormula:
    return learn_sat_traced(world, T, n, z).gamma


@dataclass(frozen=True)
class WhilePass:
    x_hat: Word
    lhs_words: Tuple[Word, ...]


@dataclass
class FormulaList:
    formulas: Tuple[AntiHornFormula, ...]
    horizon: int
    levels: Dict[int, Tuple[AntiHornFormula, ...]] = field(default_factory=dict)
    passes: Dict[int, List[WhilePass]] = field(default_factory=dict)
    sat_runs: List[LearnState] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.formulas)

    def __iter__(self):
        return iter(self.formulas)

    def describe(self) -> List[str]:
        return [format_formula(G) for G in self.formulas]


def learn_all(world: SparseWorld, T: TargetLanguage, n: int) -> FormulaList:
    if n > world.n_max:
        raise OutOfRange(f"n = {n} exceeds n_max = {world.n_max}")
    levels, passes, runs = {}, {}, []
    L: List[AntiHornFormula] = []
    for i in range(1, n + 1) if n >= 1 else [0]:
        L = []
        bound = world.p(world.q(i))
        passes[i] = []
        while (x_hat := smallest_counterexample_B(T, i, L)) is not None:
            if len(passes[i]) >= bound:
                raise InternalConsistencyError(f"learn_all exceeded {bound} while-passes at i = {i}")
            lhs_words = tuple(sorted({c.lhs for c in world.reduction(x_hat)}, key=word_key))
            passes[i].append(WhilePass(x_hat, lhs_words))
            for v in lhs_words:
                st = learn_sat_traced(world, T, i, v)
                runs.append(st)
                L.append(st.gamma)
        levels[i] = tuple(L)
    return FormulaList(tuple(L), n, levels, passes, runs)


def forecast(x: Word, L: FormulaList, world: SparseWorld) -> bool:
    if len(x) > L.horizon:
        raise OutOfRange(f"|x| = {len(x)} exceeds the forecast horizon {L.horizon}")
    phi = world.reduction(x)
    return all(derives_formula(G, phi) for G in L.formulas)


def answer_query_trace(queries: Sequence[Word], L: FormulaList, world: SparseWorld) -> List[bool]:
    return [forecast(x, L, world) for x in queries]
