import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from sparsehard.field import (
    SingularSystemError,
    build_field,
    gf_add,
    gf_inv,
    gf_mul,
    gf_pow,
    is_field_degree,
    poly_eval,
    solve_vandermonde,
)

GF4 = build_field(2)
GF64 = build_field(6)


# -- independent reference arithmetic -----------------------------------------

def ref_mul(a, b, modulus, m):
    """Shift-and-add multiplication, reducing after every shift."""
    out = 0
    for _ in range(m):
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> m:
            a ^= modulus
    return out


def ref_divides(divisor, dividend):
    """Long division of GF(2) polynomials held as coefficient lists (low degree first)."""
    rem = list(dividend)
    d = len(divisor) - 1
    for shift in range(len(rem) - 1 - d, -1, -1):
        if rem[shift + d]:
            for i, c in enumerate(divisor):
                rem[shift + i] ^= c
    return not any(rem)


def ref_inv(a, ctx):
    return next(b for b in range(1, ctx.order) if ref_mul(a, b, ctx.modulus, ctx.m) == 1)


def test_field_degrees():
    assert [m for m in range(1, 60) if is_field_degree(m)] == [2, 6, 18, 54]


def test_gf4_modulus():
    assert GF4.modulus == 0b111


def test_gf64_modulus_irreducible_by_trial_division():
    assert GF64.modulus == (1 << 6) | (1 << 3) | 1
    target = [1, 0, 0, 1, 0, 0, 1]
    for deg in range(1, 4):
        for low in itertools.product((0, 1), repeat=deg):
            divisor = list(low) + [1]
            assert not ref_divides(divisor, target), divisor


def test_bad_degree_rejected():
    with pytest.raises(ValueError):
        build_field(4)


def test_gf4_table_against_reference():
    # 0, 1, x, x+1 as 0b00, 0b01, 0b10, 0b11
    expected = {(2, 2): 3, (2, 3): 1, (3, 3): 2}
    for (a, b), v in expected.items():
        assert gf_mul(GF4, a, b) == v == gf_mul(GF4, b, a)
    for a, b in itertools.product(range(4), repeat=2):
        assert gf_mul(GF4, a, b) == ref_mul(a, b, 0b111, 2)


def test_gf64_against_reference():
    for a, b in itertools.product(range(64), repeat=2):
        assert gf_mul(GF64, a, b) == ref_mul(a, b, GF64.modulus, 6)


@pytest.mark.parametrize("ctx", [GF4, GF64], ids=["GF4", "GF64"])
def test_group_order_and_inverses(ctx):
    for a in range(1, ctx.order):
        assert gf_pow(ctx, a, ctx.order - 1) == 1
        assert gf_inv(ctx, a) == ref_inv(a, ctx)
        assert gf_mul(ctx, a, gf_inv(ctx, a)) == 1
    for a in ctx.elements():
        assert gf_add(ctx, a, a) == 0
        assert gf_add(ctx, a, 0) == a
        assert gf_mul(ctx, a, 1) == a


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        gf_inv(GF4, 0)


def test_gf4_axioms_exhaustive():
    els = range(4)
    for a, b in itertools.product(els, repeat=2):
        assert gf_mul(GF4, a, b) == gf_mul(GF4, b, a)
        assert gf_add(GF4, a, b) == gf_add(GF4, b, a)
        assert gf_mul(GF4, gf_add(GF4, a, b), gf_add(GF4, a, b)) == gf_add(GF4, gf_mul(GF4, a, a), gf_mul(GF4, b, b))
    for a, b, c in itertools.product(els, repeat=3):
        assert gf_mul(GF4, gf_mul(GF4, a, b), c) == gf_mul(GF4, a, gf_mul(GF4, b, c))
        assert gf_mul(GF4, a, gf_add(GF4, b, c)) == gf_add(GF4, gf_mul(GF4, a, b), gf_mul(GF4, a, c))


@settings(max_examples=300)
@given(st.integers(0, 63), st.integers(0, 63), st.integers(0, 63))
def test_gf64_axioms(a, b, c):
    mul, add = (lambda x, y: gf_mul(GF64, x, y)), (lambda x, y: gf_add(GF64, x, y))
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b) == mul(b, a)
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert mul(add(a, b), add(a, b)) == add(mul(a, a), mul(b, b))


# -- Vandermonde ----------------------------------------------------------------

def lagrange_coeffs(ctx, us, vs):
    """Interpolating polynomial via Lagrange's formula, using reference arithmetic."""
    mul = lambda a, b: ref_mul(a, b, ctx.modulus, ctx.m)
    n = len(us)
    total = [0] * n
    for i in range(n):
        num = [1]
        denom = 1
        for j in range(n):
            if j == i:
                continue
            # num *= (x + u_j)   (minus is plus in characteristic 2)
            nxt = [0] * (len(num) + 1)
            for d, c in enumerate(num):
                nxt[d] ^= mul(c, us[j])
                nxt[d + 1] ^= c
            num = nxt
            denom = mul(denom, us[i] ^ us[j])
        scale = mul(vs[i], ref_inv(denom, ctx))
        for d in range(n):
            total[d] ^= mul(num[d], scale)
    return total


def test_vandermonde_one_by_one():
    assert solve_vandermonde(GF4, [3], [2]) == [2]


def test_vandermonde_gf4_forward():
    a = [3, 2]
    us = [1, 2]
    vs = [poly_eval(GF4, a, u) for u in us]
    assert solve_vandermonde(GF4, us, vs) == a


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32), st.sampled_from([2, 6]), st.integers(1, 6))
def test_vandermonde_matches_lagrange(seed, m, n):
    ctx = GF4 if m == 2 else GF64
    n = min(n, ctx.order)
    rng = random.Random(seed)
    us = rng.sample(range(ctx.order), n)
    a = [rng.randrange(ctx.order) for _ in range(n)]
    vs = [poly_eval(ctx, a, u) for u in us]
    solved = solve_vandermonde(ctx, us, vs)
    assert solved == a == lagrange_coeffs(ctx, us, vs)


def test_vandermonde_duplicate_points():
    with pytest.raises(SingularSystemError):
        solve_vandermonde(GF4, [1, 1], [0, 1])
