"""Arithmetic in GF(2^m) for m = 2 * 3^l, and Vandermonde solves over it.

Elements are ints whose bit i is the coefficient of x^i.  The modulus is the
trinomial x^m + x^(m/2) + 1, which is irreducible exactly for this family of
m; irreducibility is re-checked by trial division when m <= 18.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

IRREDUCIBILITY_CHECK_LIMIT = 18
TABLE_LIMIT = 8  # build a full product table for m <= this


class SingularSystemError(ValueError):
    pass


def is_field_degree(m: int) -> bool:
    if m < 2 or m % 2:
        return False
    r = m // 2
    while r % 3 == 0:
        r //= 3
    return r == 1


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2) polynomials."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def poly_mod(a: int, mod: int) -> int:
    dm = mod.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= mod << (a.bit_length() - 1 - dm)
    return a


def is_irreducible(mod: int) -> bool:
    """Trial division by every polynomial of degree 1 .. deg/2."""
    deg = mod.bit_length() - 1
    if deg < 1:
        return False
    for d in range(2, 1 << (deg // 2 + 1)):
        if poly_mod(mod, d) == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldCtx:
    m: int
    modulus: int
    _table: Optional[List[List[int]]] = field(default=None, repr=False, compare=False)

    @property
    def order(self) -> int:
        return 1 << self.m

    def elements(self) -> range:
        return range(self.order)

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise ValueError(f"{a} is not an element of GF(2^{self.m})")
        return a

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if self._table is not None:
            return self._table[a][b]
        return poly_mod(clmul(a, b), self.modulus)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(2^m)")
        return self.pow(a, self.order - 2)

    def bits(self, a: int) -> str:
        """m-bit string, most significant coefficient first."""
        return format(a, f"0{self.m}b")

    def __str__(self) -> str:
        return f"GF(2^{self.m}) mod x^{self.m}+x^{self.m // 2}+1"


def build_field(m: int) -> FieldCtx:
    if not is_field_degree(m):
        raise ValueError(f"m = {m} is not of the form 2*3^l")
    modulus = (1 << m) | (1 << (m // 2)) | 1
    if m <= IRREDUCIBILITY_CHECK_LIMIT and not is_irreducible(modulus):
        raise RuntimeError(f"modulus for m = {m} failed the irreducibility check")
    table = None
    if m <= TABLE_LIMIT:
        order = 1 << m
        table = [[poly_mod(clmul(a, b), modulus) for b in range(order)] for a in range(order)]
    return FieldCtx(m, modulus, table)


def gf_add(ctx: FieldCtx, a: int, b: int) -> int:
    return ctx.add(a, b)


def gf_mul(ctx: FieldCtx, a: int, b: int) -> int:
    return ctx.mul(a, b)


def gf_inv(ctx: FieldCtx, a: int) -> int:
    return ctx.inv(a)


def gf_pow(ctx: FieldCtx, a: int, e: int) -> int:
    return ctx.pow(a, e)


def poly_eval(ctx: FieldCtx, coeffs: Sequence[int], u: int) -> int:
    """sum_j coeffs[j] * u^j by Horner's rule."""
    acc = 0
    for c in reversed(coeffs):
        acc = ctx.mul(acc, u) ^ c
    return acc


def solve_vandermonde(ctx: FieldCtx, us: Sequence[int], vs: Sequence[int]) -> List[int]:
    """Find a with sum_j a[j] * us[i]^j == vs[i] for all i, by Gaussian elimination."""
    n = len(us)
    if len(vs) != n:
        raise ValueError("us and vs differ in length")
    if len(set(us)) != n:
        raise SingularSystemError("evaluation points are not pairwise distinct")
    rows = [[ctx.pow(u, j) for j in range(n)] + [v] for u, v in zip(us, vs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            raise SingularSystemError("matrix is singular")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = ctx.inv(rows[col][col])
        rows[col] = [ctx.mul(inv, x) for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x ^ ctx.mul(f, y) for x, y in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]
