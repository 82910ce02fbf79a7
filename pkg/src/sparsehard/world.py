"""Synthetic sparse worlds: an explicit sparse set, a k-anti-Horn reduction, and
the target language the reduction induces.

The target language is *defined* as ``{x : Phi_x is satisfied by S}``, so the
reduction is correct by construction and every claim about it can be checked
by exhaustive scan.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .clauses import (
    AntiHornClause,
    AntiHornFormula,
    Word,
    check_word,
    derives_formula,
    format_formula,
    format_word,
    formula_satisfied,
    parse_formula,
    parse_word,
    word_key,
    words_upto,
)

MAX_CLAUSES_PER_PHI = 4
HUB_COUNT = 3
HUB_MAX_LEN = 3
HUB_RATE = 0.5
EMPTY_RHS_RATE = 0.1


class WorldError(ValueError):
    """A world violates its census, bound, or arity invariants."""


class OutOfRange(ValueError):
    """A word is longer than the horizon an oracle or forecast covers."""


@dataclass(frozen=True)
class Poly:
    """Polynomial with nonnegative integer coefficients, lowest degree first."""

    coeffs: Tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(int(c) for c in self.coeffs)
        if not coeffs or any(c < 0 for c in coeffs):
            raise ValueError(f"need a nonempty list of nonnegative coefficients, got {self.coeffs!r}")
        if len(coeffs) > 4:
            raise ValueError("degree is limited to 3")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def of(cls, *coeffs: int) -> "Poly":
        return cls(tuple(coeffs))

    def __call__(self, n: int) -> int:
        total = 0
        for c in reversed(self.coeffs):
            total = total * n + c
        return total

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "n" if i == 1 else f"n^{i}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms) or "0"


def _census_counts(S: Iterable[Word], max_len: int) -> List[int]:
    """counts[n] = |{w in S : |w| <= n}| for n = 0..max_len."""
    per_len = [0] * (max_len + 1)
    for w in S:
        if len(w) <= max_len:
            per_len[len(w)] += 1
    out, run = [], 0
    for c in per_len:
        run += c
        out.append(run)
    return out


@dataclass(frozen=True)
class SparseWorld:
    seed: int
    k: int
    n_max: int
    p: Poly
    q: Poly
    S: frozenset
    overrides: Mapping[Word, AntiHornFormula] = field(default_factory=dict)
    _cache: Dict[Word, AntiHornFormula] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        object.__setattr__(self, "S", frozenset(self.S))
        object.__setattr__(self, "overrides", dict(self.overrides))

    @property
    def max_len(self) -> int:
        """Longest word length any Phi_x (|x| <= n_max) may mention."""
        return self.q(self.n_max)

    def reduction(self, x: Word) -> AntiHornFormula:
        phi = self._cache.get(x)
        if phi is None:
            if x in self.overrides:
                phi = self.overrides[x]
            else:
                phi = generated_phi(self.seed, x, self.k, self.q, self.S)
            self._cache[x] = phi
        return phi

    def census(self, n: int) -> int:
        return sum(1 for w in self.S if len(w) <= n)

    def validate(self) -> None:
        """Raise :class:`WorldError` on the first violated invariant."""
        if self.k < 1:
            raise WorldError(f"arity bound k must be >= 1, got {self.k}")
        for n in range(self.max_len + 1):
            if self.p(n) <= 1:
                raise WorldError(f"census polynomial must exceed 1, but p({n}) = {self.p(n)}")
        counts = _census_counts(self.S, self.max_len)
        for n, c in enumerate(counts):
            if c > self.p(n):
                raise WorldError(
                    f"census violated at length {n}: |S ∩ Σ^≤{n}| = {c} > p({n}) = {self.p(n)}"
                )
        for x in self.overrides:
            if len(x) > self.n_max:
                raise WorldError(f"reduction table entry {format_word(x)} is longer than n_max")
        for x in words_upto(self.n_max):
            check_phi(self.reduction(x), len(x), self.k, self.q)


def check_phi(phi: AntiHornFormula, n: int, k: int, q: Poly) -> None:
    bound = q(n)
    if len(phi) > bound:
        raise WorldError(f"reduction of a length-{n} word has {len(phi)} clauses > q({n}) = {bound}")
    for c in phi:
        if c.arity > k:
            raise WorldError(f"clause {c} exceeds arity bound {k}")
        for w in c.words():
            if len(w) > bound:
                raise WorldError(f"clause {c} mentions a word longer than q({n}) = {bound}")


def _pick_word(rng: random.Random, pool: Sequence[Word], max_len: int) -> Word:
    if pool and rng.random() < 0.6:
        return rng.choice(pool)
    length = rng.randint(0, max_len)
    return format(rng.getrandbits(length), f"0{length}b") if length else ""


def hub_words(seed: int) -> Tuple[Word, ...]:
    """A few short words many clauses share as left-hand side.

    Concentrating left-hand sides is what drives a learned formula up to its
    size cap, so without hubs the packing step would rarely run.
    """
    rng = random.Random(f"hub:{seed}")
    hubs = []
    for _ in range(HUB_COUNT):
        length = rng.randint(0, HUB_MAX_LEN)
        hubs.append(format(rng.getrandbits(length), f"0{length}b") if length else "")
    return tuple(hubs)


def generated_phi(seed: int, x: Word, k: int, q: Poly, S: Iterable[Word]) -> AntiHornFormula:
    """Deterministic pseudo-random Phi_x, a function of ``(seed, x)`` and the world's S."""
    bound = q(len(x))
    pool = sorted((w for w in S if len(w) <= bound), key=word_key)
    hubs = [h for h in hub_words(seed) if len(h) <= bound]
    rng = random.Random(f"phi:{seed}:{x}")
    count = rng.randint(0, min(bound, MAX_CLAUSES_PER_PHI))
    clauses = set()
    for i in range(count):
        crng = random.Random(f"phi:{seed}:{x}:{i}")
        if hubs and crng.random() < HUB_RATE:
            lhs = crng.choice(hubs)
        else:
            lhs = _pick_word(crng, pool, bound)
        width = 0 if crng.random() < EMPTY_RHS_RATE else crng.randint(1, k)
        rhs = {_pick_word(crng, pool, bound) for _ in range(width)}
        clauses.add(AntiHornClause(lhs, frozenset(rhs)))
    return frozenset(clauses)


def generate_sparse_set(seed: int, p: Poly, max_len: int, density) -> frozenset:
    """Random S whose census stays within ``floor(density * p(n))`` at every length."""
    density = Fraction(density)
    rng = random.Random(f"S:{seed}")
    limits = [int(density * p(n)) for n in range(max_len + 1)]
    counts = [0] * (max_len + 1)  # cumulative census
    S = set()
    attempts = 20 * (limits[-1] + 1) if limits else 0
    for _ in range(attempts):
        if len(S) >= limits[-1]:
            break
        length = rng.randint(0, max_len)
        if len(S) >= (1 << (max_len + 1)) - 1:
            break
        w = format(rng.getrandbits(length), f"0{length}b") if length else ""
        if w in S:
            continue
        if any(counts[n] + 1 > limits[n] for n in range(length, max_len + 1)):
            continue
        S.add(w)
        for n in range(length, max_len + 1):
            counts[n] += 1
    return frozenset(S)


def generate_world(seed: int, k: int, n_max: int, p: Poly, q: Poly, density=1) -> SparseWorld:
    if k < 1:
        raise WorldError(f"k must be >= 1, got {k}")
    if n_max < 0:
        raise WorldError(f"n_max must be >= 0, got {n_max}")
    density = Fraction(density)
    if not 0 <= density <= 1:
        raise WorldError(f"density must lie in [0, 1], got {density}")
    max_len = q(n_max)
    for n in range(max_len + 1):
        if p(n) <= 1:
            raise WorldError(f"census polynomial must exceed 1, but p({n}) = {p(n)}")
    S = generate_sparse_set(seed, p, max_len, density)
    return SparseWorld(seed=seed, k=k, n_max=n_max, p=p, q=q, S=S)


class TargetLanguage:
    """Membership oracle ``x in T  <=>  Phi_x is satisfied by S``."""

    def __init__(self, world: SparseWorld):
        self.world = world
        self._members: Dict[Word, bool] = {}

    def __contains__(self, x: Word) -> bool:
        if len(x) > self.world.n_max:
            raise OutOfRange(f"|x| = {len(x)} exceeds n_max = {self.world.n_max}")
        hit = self._members.get(x)
        if hit is None:
            hit = formula_satisfied(self.world.reduction(x), self.world.S)
            self._members[x] = hit
        return hit

    def members(self, n: int) -> List[Word]:
        return [x for x in words_upto(n) if x in self]


def decide_membership(T: TargetLanguage, x: Word) -> bool:
    return x in T


def smallest_counterexample_A(T: TargetLanguage, n: int, G: Iterable[AntiHornClause]) -> Optional[Word]:
    """Smallest member x, |x| <= n, whose formula G fails to derive."""
    G = tuple(G)
    for x in words_upto(n):
        if x in T and not derives_formula(G, T.world.reduction(x)):
            return x
    return None


def smallest_counterexample_B(T: TargetLanguage, i: int, L: Sequence[Iterable[AntiHornClause]]) -> Optional[Word]:
    """Smallest non-member x, |x| <= i, that every formula of L derives."""
    L = [tuple(G) for G in L]
    for x in words_upto(i):
        if x not in T:
            phi = T.world.reduction(x)
            if all(derives_formula(G, phi) for G in L):
                return x
    return None


# -- scenario files ---------------------------------------------------------


def world_to_dict(w: SparseWorld) -> dict:
    return {
        "seed": w.seed,
        "k": w.k,
        "n_max": w.n_max,
        "p": list(w.p.coeffs),
        "q": list(w.q.coeffs),
        "S": [format_word(s) for s in sorted(w.S, key=word_key)],
        "reduction": {
            format_word(x): format_formula(phi)
            for x, phi in sorted(w.overrides.items(), key=lambda kv: word_key(kv[0]))
        },
    }


def world_from_dict(d: Mapping) -> SparseWorld:
    k = int(d["k"])
    overrides = {parse_word(x): parse_formula(text) for x, text in d.get("reduction", {}).items()}
    w = SparseWorld(
        seed=int(d["seed"]),
        k=k,
        n_max=int(d["n_max"]),
        p=Poly(tuple(d["p"])),
        q=Poly(tuple(d["q"])),
        S=frozenset(check_word(parse_word(s)) for s in d["S"]),
        overrides=overrides,
    )
    w.validate()
    return w


def dumps_world(w: SparseWorld) -> str:
    return json.dumps(world_to_dict(w), indent=2, sort_keys=True) + "\n"


def loads_world(text: str) -> SparseWorld:
    return world_from_dict(json.loads(text))


def save_world(w: SparseWorld, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_world(w))


def load_world(path) -> SparseWorld:
    with open(path, encoding="utf-8") as fh:
        return loads_world(fh.read())
