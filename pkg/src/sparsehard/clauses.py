"""Words, k-anti-Horn clauses and formulas over words, and the derivation relation.

A word is a plain ``str`` over ``{"0", "1"}``.  A clause ``(v0 -> v1 | ... | vm)``
is an :class:`AntiHornClause`; a formula is a ``frozenset`` of clauses, so
formula equality is set equality for free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, FrozenSet, Iterable, Iterator, Optional, Tuple

Word = str
EMPTY_WORD_TEXT = "_"


def check_word(w: str) -> str:
    if not isinstance(w, str) or w.strip("01"):
        raise ValueError(f"not a binary word: {w!r}")
    return w


def word_key(w: Word) -> Tuple[int, str]:
    """Length-lexicographic sort key: shorter first, then by bits."""
    return (len(w), w)


def words_upto(n: int) -> Iterator[Word]:
    """All words of length <= n in length-lex order."""
    yield ""
    for length in range(1, n + 1):
        for i in range(1 << length):
            yield format(i, f"0{length}b")


def format_word(w: Word) -> str:
    return w if w else EMPTY_WORD_TEXT


def parse_word(text: str) -> Word:
    text = text.strip()
    if text == EMPTY_WORD_TEXT:
        return ""
    return check_word(text)


class ArityError(ValueError):
    """A clause has more right-hand-side words than the arity bound allows."""


@dataclass(frozen=True)
class AntiHornClause:
    lhs: Word
    rhs: FrozenSet[Word] = frozenset()

    def __post_init__(self) -> None:
        check_word(self.lhs)
        rhs = frozenset(self.rhs)
        for w in rhs:
            check_word(w)
        object.__setattr__(self, "rhs", rhs)

    @classmethod
    def make(cls, lhs: Word, rhs: Iterable[Word] = (), k: Optional[int] = None) -> "AntiHornClause":
        c = cls(lhs, frozenset(rhs))
        if k is not None and len(c.rhs) > k:
            raise ArityError(f"clause {c} has {len(c.rhs)} rhs words, bound is {k}")
        return c

    @property
    def arity(self) -> int:
        return len(self.rhs)

    def sorted_rhs(self) -> Tuple[Word, ...]:
        return tuple(sorted(self.rhs, key=word_key))

    def sort_key(self):
        return (word_key(self.lhs), len(self.rhs), tuple(word_key(w) for w in self.sorted_rhs()))

    def words(self) -> Iterator[Word]:
        yield self.lhs
        yield from self.rhs

    def __str__(self) -> str:
        head = f"{format_word(self.lhs)} ->"
        if not self.rhs:
            return head
        return head + " " + "|".join(format_word(w) for w in self.sorted_rhs())

    @classmethod
    def parse(cls, text: str, k: Optional[int] = None) -> "AntiHornClause":
        """Parse the canonical ``lhs -> w1|w2`` form (``_`` is the empty word)."""
        if "->" not in text:
            raise ValueError(f"missing '->' in clause text {text!r}")
        left, right = text.split("->", 1)
        right = right.strip()
        rhs = [parse_word(t) for t in right.split("|")] if right else []
        if len(set(rhs)) != len(rhs):
            raise ValueError(f"duplicate rhs words in {text!r}")
        return cls.make(parse_word(left), rhs, k)


AntiHornFormula = FrozenSet[AntiHornClause]


def formula(*clauses: AntiHornClause) -> AntiHornFormula:
    return frozenset(clauses)


def sorted_clauses(f: Iterable[AntiHornClause]) -> list:
    return sorted(f, key=AntiHornClause.sort_key)


def format_formula(f: Iterable[AntiHornClause]) -> str:
    return "; ".join(str(c) for c in sorted_clauses(f))


def parse_formula(text: str, k: Optional[int] = None) -> AntiHornFormula:
    parts = [t for t in text.split(";") if t.strip()]
    return frozenset(AntiHornClause.parse(t, k) for t in parts)


def derives_clause(g: AntiHornClause, d: AntiHornClause) -> bool:
    return g.lhs != d.lhs or g.rhs <= d.rhs


def derives_formula(G: Iterable[AntiHornClause], D: Iterable[AntiHornClause]) -> bool:
    G = tuple(G)
    return all(any(derives_clause(g, d) for g in G) for d in D)


def clause_satisfied(c: AntiHornClause, S: AbstractSet[Word]) -> bool:
    return c.lhs not in S or not c.rhs.isdisjoint(S)


def formula_satisfied(F: Iterable[AntiHornClause], S: AbstractSet[Word]) -> bool:
    return all(clause_satisfied(c, S) for c in F)


def formula_words(F: Iterable[AntiHornClause]) -> set:
    return {w for c in F for w in c.words()}
