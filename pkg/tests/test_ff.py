"""Field contexts and towers: canonical choices, axioms, norms."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mrlrc.ff import (
    DegreeOverflow, DivisionByZero, FieldCtx, NotPrime, TooManyBlocks,
    ZeroNorm, field_ctx, is_prime_power, least_irreducible, make_tower,
    next_prime_power,
)


def test_canonical_moduli():
    # least monic irreducible in base-p integer order
    assert least_irreducible(3, 2) == (1, 0, 1)          # x^2 + 1
    assert least_irreducible(2, 2) == (1, 1, 1)          # x^2 + x + 1
    assert least_irreducible(2, 3) == (1, 1, 0, 1)       # x^3 + x + 1
    assert least_irreducible(2, 4) == (1, 1, 0, 0, 1)    # x^4 + x + 1
    assert least_irreducible(3, 1) == (0, 1)             # x


def test_gf9_least_irreducible_by_exhaustion():
    # oracle: enumerate the monic quadratics over GF(3) without roots
    def has_root(c0, c1):
        return any((x * x + c1 * x + c0) % 3 == 0 for x in range(3))

    rootfree = [(c0, c1) for c1 in range(3) for c0 in range(3)
                if not has_root(c0, c1)]
    assert len(rootfree) == 3
    least = min(rootfree, key=lambda c: c[0] + 3 * c[1])
    assert least_irreducible(3, 2) == (least[0], least[1], 1)


def test_not_prime_and_overflow():
    with pytest.raises(NotPrime):
        FieldCtx(4, 1)
    with pytest.raises(NotPrime):
        make_tower(6, 1, 2)
    with pytest.raises(DegreeOverflow):
        FieldCtx(2, 41)


def test_prime_power_helpers():
    assert is_prime_power(9) == (3, 2)
    assert is_prime_power(8) == (2, 3)
    assert is_prime_power(12) is None
    assert next_prime_power(6) == 7
    assert next_prime_power(9) == 9


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 4), (3, 3), (5, 2)])
def test_field_axioms_random(p, e):
    ctx = field_ctx(p, e)
    rnd = random.Random(1234)
    for _ in range(10_000):
        x, y, z = (rnd.randrange(ctx.order) for _ in range(3))
        assert ctx.mul(ctx.add(x, y), z) == ctx.add(ctx.mul(x, z), ctx.mul(y, z))
        assert ctx.add(x, ctx.neg(x)) == 0
        if x:
            assert ctx.mul(x, ctx.inv(x)) == 1
        assert ctx.sub(x, y) == ctx.add(x, ctx.neg(y))


def test_generic_path_matches_tables():
    # same field with and without tables must agree operation by operation
    ctx = field_ctx(3, 4)
    rnd = random.Random(7)
    for _ in range(300):
        x, y = rnd.randrange(81), rnd.randrange(81)
        assert ctx.add(x, y) == ctx._g_add(x, y)
        assert ctx.mul(x, y) == ctx._g_mul(x, y)
    for x in range(1, 81):
        assert ctx.mul(x, ctx.inv(x)) == 1


def test_big_field_generic_arithmetic():
    ctx = field_ctx(2, 33)  # above the table limit, below the order cap
    a, b = 0x123456789, 0x87654321
    assert ctx.mul(a, ctx.inv(a)) == 1
    assert ctx.mul(ctx.add(a, b), 3) == ctx.add(ctx.mul(a, 3), ctx.mul(b, 3))
    assert ctx.pow(a, ctx.order - 1) == 1


def test_pow_square_and_multiply():
    f9 = field_ctx(3, 2)
    gamma = f9.primitive
    assert f9.pow(gamma, 8) == 1
    assert f9.pow(gamma, 4) != 1
    assert f9.pow(0, 0) == 1
    assert f9.pow(0, 5) == 0
    with pytest.raises(DivisionByZero):
        f9.inv(0)


def test_gf3_examples():
    f3 = field_ctx(3)
    assert f3.mul(2, 2) == 1
    assert f3.inv(2) == 2


def test_primitive_is_least():
    f9 = field_ctx(3, 2)
    assert f9.primitive == 4  # x + 1; x itself has order 4 modulo x^2+1
    orders = [f9.mult_order(a) for a in range(1, 9)]
    assert max(orders) == 8
    assert min(a for a in range(1, 9) if f9.mult_order(a) == 8) == 4


def test_make_tower_degenerate():
    t = make_tower(2, 1, 1)
    assert t.base is t.top
    assert all(t.embed(a) == a for a in range(2))


def test_tower_embed_is_homomorphism():
    for (p, s, m) in [(3, 1, 2), (2, 2, 2), (3, 2, 2), (2, 2, 3)]:
        t = make_tower(p, s, m)
        for a in t.base.elements():
            for b in t.base.elements():
                assert t.embed(t.base.mul(a, b)) == t.top.mul(t.embed(a), t.embed(b))
                assert t.embed(t.base.add(a, b)) == t.top.add(t.embed(a), t.embed(b))
        assert t.embed(1) == 1


def test_gf9_in_gf81_generator_order():
    t = make_tower(3, 2, 2)
    img = t.embed(t.base.primitive)
    assert t.top.mult_order(img) == 8
    assert t.top.pow(img, 4) != 1


def test_frobenius_fixes_embedded_subfield():
    # exhaustive for towers with top order <= 3^5
    for (p, s, m) in [(3, 1, 2), (3, 1, 3), (3, 1, 5), (2, 2, 2), (3, 2, 2)]:
        t = make_tower(p, s, m)
        for a in t.base.elements():
            assert t.frobenius(t.embed(a), 1) == t.embed(a)
        # fixed points of x -> x^q are exactly the subfield
        fixed = sum(1 for x in t.top.elements() if t.frobenius(x, 1) == x)
        assert fixed == t.q


def test_frobenius_is_automorphism():
    # exhaustive over all pairs for towers with top order up to 3^5
    for (p, s, m) in [(3, 1, 3), (2, 2, 2), (3, 1, 5)]:
        t = make_tower(p, s, m)
        top = t.top
        frob = [t.frobenius(x, 1) for x in top.elements()]
        assert sorted(frob) == list(top.elements())  # bijective
        for x in top.elements():
            assert t.frobenius(x, 0) == x
            for y in top.elements():
                assert frob[top.add(x, y)] == top.add(frob[x], frob[y])
                assert frob[top.mul(x, y)] == top.mul(frob[x], frob[y])


def test_rel_norm_examples():
    t = make_tower(3, 1, 2)
    gamma = t.top.primitive
    assert t.rel_norm(1) == 1
    assert t.rel_norm(gamma) == 2          # gamma^4, the order-2 element of GF(3)*
    for a in range(1, 3):
        assert t.rel_norm(t.embed(a)) == t.base.pow(a, t.m)
    with pytest.raises(ZeroNorm):
        t.rel_norm(0)


def test_rel_norm_multiplicative_and_surjective():
    for (p, s, m) in [(3, 1, 2), (3, 1, 3), (2, 2, 2), (3, 2, 2), (3, 1, 5)]:
        t = make_tower(p, s, m)
        top = t.top
        hit = set()
        for x in range(1, top.order):
            hit.add(t.rel_norm(x))
            y = 1 + x % (top.order - 1)
            assert t.rel_norm(top.mul(x, y)) == \
                t.base.mul(t.rel_norm(x), t.rel_norm(y))
        assert hit == set(range(1, t.q))


def test_distinct_norm_elements():
    t = make_tower(3, 1, 2)
    a = t.distinct_norm_elements(2)
    assert a == (1, t.top.primitive)
    assert t.rel_norm(a[0]) != t.rel_norm(a[1])
    assert t.distinct_norm_elements(1) == (1,)
    with pytest.raises(TooManyBlocks):
        t.distinct_norm_elements(3)


def test_base_coords_roundtrip():
    for (p, s, m) in [(3, 1, 3), (2, 2, 2), (3, 2, 2)]:
        t = make_tower(p, s, m)
        for y in t.top.elements():
            cs = t.base_coords(y)
            assert len(cs) == m
            assert t.from_base_coords(cs) == y


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 80), st.integers(0, 80), st.integers(0, 80))
def test_gf81_ring_axioms_hypothesis(x, y, z):
    ctx = field_ctx(3, 4)
    assert ctx.add(x, y) == ctx.add(y, x)
    assert ctx.mul(x, y) == ctx.mul(y, x)
    assert ctx.mul(x, ctx.mul(y, z)) == ctx.mul(ctx.mul(x, y), z)
    assert ctx.mul(x, ctx.add(y, z)) == ctx.add(ctx.mul(x, y), ctx.mul(x, z))
