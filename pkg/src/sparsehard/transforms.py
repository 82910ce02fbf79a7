"""Bounded CNF/DNF over words and the transform of bounded CNF into k-anti-Horn form.

Tuples of words are packed into a single word by a self-delimiting code:
the arity in unary (``1`` * arity, then ``0``), then each component with
every bit doubled and ``01`` as terminator.  The code is injective and its
image is decidable, which is all the transform needs.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import AbstractSet, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .clauses import (
    AntiHornClause,
    AntiHornFormula,
    ArityError,
    Word,
    check_word,
    format_word,
    parse_word,
    word_key,
)


def encode_tuple(words: Sequence[Word], k: Optional[int] = None) -> Word:
    if k is not None and len(words) > k:
        raise ArityError(f"tuple arity {len(words)} exceeds k = {k}")
    parts = ["1" * len(words), "0"]
    for w in words:
        check_word(w)
        parts.append("".join(b + b for b in w))
        parts.append("01")
    return "".join(parts)


def decode_tuple(w: Word) -> Optional[Tuple[Word, ...]]:
    arity = 0
    while arity < len(w) and w[arity] == "1":
        arity += 1
    if arity >= len(w):
        return None
    pos = arity + 1
    out = []
    for _ in range(arity):
        bits = []
        while True:
            pair = w[pos:pos + 2]
            pos += 2
            if len(pair) < 2 or pair == "10":
                return None
            if pair == "01":
                break
            bits.append(pair[0])
        out.append("".join(bits))
    if pos != len(w):
        return None
    return tuple(out)


EMPTY_TUPLE_CODE = encode_tuple(())


@dataclass(frozen=True)
class BoundedClause:
    """A disjunction (in CNF) or conjunction (in DNF) of word literals."""

    negatives: FrozenSet[Word] = frozenset()
    positives: FrozenSet[Word] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "negatives", frozenset(check_word(w) for w in self.negatives))
        object.__setattr__(self, "positives", frozenset(check_word(w) for w in self.positives))

    @property
    def size(self) -> int:
        return len(self.negatives) + len(self.positives)

    def words(self) -> set:
        return set(self.negatives) | set(self.positives)

    def __str__(self) -> str:
        lits = [f"-{format_word(w)}" for w in sorted(self.negatives, key=word_key)]
        lits += [f"+{format_word(w)}" for w in sorted(self.positives, key=word_key)]
        return "[" + " ".join(lits) + "]"

    @classmethod
    def parse(cls, text: str) -> "BoundedClause":
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"expected [...] literal group, got {text!r}")
        neg, pos = set(), set()
        for tok in body[1:-1].split():
            sign, word = tok[0], parse_word(tok[1:])
            if sign == "-":
                neg.add(word)
            elif sign == "+":
                pos.add(word)
            else:
                raise ValueError(f"literal must start with + or -: {tok!r}")
        return cls(frozenset(neg), frozenset(pos))


def _check_arity(groups: Iterable[BoundedClause], k: int) -> None:
    for g in groups:
        if g.size > k:
            raise ArityError(f"{g} has {g.size} literals, bound is {k}")


def _parse_groups(text: str) -> List[BoundedClause]:
    return [BoundedClause.parse(m) for m in re.findall(r"\[[^\]]*\]", text)]


@dataclass(frozen=True)
class BoundedCNF:
    conjuncts: Tuple[BoundedClause, ...]
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "conjuncts", tuple(self.conjuncts))
        _check_arity(self.conjuncts, self.k)

    def satisfied(self, S: AbstractSet[Word]) -> bool:
        return all(
            any(w not in S for w in c.negatives) or any(w in S for w in c.positives)
            for c in self.conjuncts
        )

    def words(self) -> set:
        return set().union(*(c.words() for c in self.conjuncts))

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.conjuncts)

    @classmethod
    def parse(cls, text: str, k: int) -> "BoundedCNF":
        return cls(tuple(_parse_groups(text)), k)


@dataclass(frozen=True)
class BoundedDNF:
    disjuncts: Tuple[BoundedClause, ...]
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "disjuncts", tuple(self.disjuncts))
        _check_arity(self.disjuncts, self.k)

    def satisfied(self, S: AbstractSet[Word]) -> bool:
        return any(
            all(w in S for w in c.positives) and all(w not in S for w in c.negatives)
            for c in self.disjuncts
        )

    def words(self) -> set:
        return set().union(*(c.words() for c in self.disjuncts))

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.disjuncts)

    @classmethod
    def parse(cls, text: str, k: int) -> "BoundedDNF":
        return cls(tuple(_parse_groups(text)), k)


def transform_clause(c: BoundedClause, k: int) -> AntiHornClause:
    lhs = encode_tuple(sorted(c.negatives, key=word_key), k)
    rhs = frozenset(encode_tuple([w], k) for w in c.positives)
    return AntiHornClause.make(lhs, rhs, k)


def transform_cnf(F: BoundedCNF) -> AntiHornFormula:
    _check_arity(F.conjuncts, F.k)
    return frozenset(transform_clause(c, F.k) for c in F.conjuncts)


def lift_sparse_set(S: Iterable[Word], k: int, length_cap: int) -> frozenset:
    """Codes of every tuple over S (components no longer than ``length_cap``) of arity <= k."""
    base = sorted((w for w in S if len(w) <= length_cap), key=word_key)
    return frozenset(
        encode_tuple(t) for i in range(k + 1) for t in itertools.product(base, repeat=i)
    )


def negate_dbtt(F: BoundedDNF) -> BoundedCNF:
    """De Morgan: the CNF satisfied by exactly the sets that falsify ``F``."""
    return BoundedCNF(tuple(BoundedClause(d.positives, d.negatives) for d in F.disjuncts), F.k)
