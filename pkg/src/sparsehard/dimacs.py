"""CNF formulas over propositional variables, in DIMACS text form."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple


@dataclass(frozen=True)
class CNFFormula:
    n_vars: int
    clauses: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        for c in clauses:
            for lit in c:
                if lit == 0 or abs(lit) > self.n_vars:
                    raise ValueError(f"literal {lit} out of range for {self.n_vars} variables")
        object.__setattr__(self, "clauses", clauses)

    @property
    def size(self) -> int:
        """Variables plus literal occurrences; never smaller than n_vars."""
        return self.n_vars + sum(len(c) for c in self.clauses)

    def evaluate(self, bits: Sequence[int]) -> bool:
        """bits[i] is the value of variable i+1."""
        return all(any((lit > 0) == bool(bits[abs(lit) - 1]) for lit in c) for c in self.clauses)

    def assignments(self) -> Iterator[Tuple[int, ...]]:
        return itertools.product((0, 1), repeat=self.n_vars)

    def satisfying_assignments(self) -> List[Tuple[int, ...]]:
        return [a for a in self.assignments() if self.evaluate(a)]

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.n_vars} {len(self.clauses)}"]
        lines += [" ".join(str(l) for l in c) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CNFFormula:
    n_vars = n_clauses = None
    clauses: List[Tuple[int, ...]] = []
    current: List[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad problem line: {line!r}")
            n_vars, n_clauses = int(parts[2]), int(parts[3])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(tuple(current))
    if n_vars is None:
        raise ValueError("missing 'p cnf' header")
    if n_clauses != len(clauses):
        raise ValueError(f"header declares {n_clauses} clauses, found {len(clauses)}")
    return CNFFormula(n_vars, tuple(clauses))


def random_unique_formula(rng: random.Random, n_vars: int, width: int = 3) -> CNFFormula:
    """Random CNF with exactly one satisfying assignment.

    Clauses are drawn among those the planted assignment satisfies and kept
    only when they cut the solution count, until one solution is left.
    """
    target = tuple(rng.randint(0, 1) for _ in range(n_vars))
    alive = set(itertools.product((0, 1), repeat=n_vars))
    clauses: List[Tuple[int, ...]] = []
    while len(alive) > 1:
        vs = rng.sample(range(1, n_vars + 1), min(width, n_vars))
        clause = tuple(v if rng.random() < 0.5 else -v for v in vs)
        if not any((lit > 0) == bool(target[abs(lit) - 1]) for lit in clause):
            continue
        survivors = {a for a in alive if any((lit > 0) == bool(a[abs(lit) - 1]) for lit in clause)}
        if len(survivors) < len(alive):
            alive = survivors
            clauses.append(clause)
    return CNFFormula(n_vars, tuple(clauses))


def random_unsat_formula(rng: random.Random, n_vars: int) -> CNFFormula:
    """Pin variable 1 both ways, plus some noise clauses."""
    clauses = [(1,), (-1,)]
    for _ in range(rng.randint(0, 3)):
        vs = rng.sample(range(1, n_vars + 1), min(2, n_vars))
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    rng.shuffle(clauses)
    return CNFFormula(n_vars, tuple(clauses))
