import random

import pytest

from rrspace.errors import InvalidInput
from rrspace.field_tower import (
    PrimeField, ExtensionField, factor_univariate, flatten_tower,
    pmul, pscale, padd, pnormalize, peval, pdeg, pkey, is_irreducible,
    _min_poly_over_prime,
)


def brute_roots(F, g):
    return [x for x in F.elements() if F.is_zero(peval(F, g, x))]


def test_prime_field_construction_rejects_composites():
    with pytest.raises(InvalidInput):
        PrimeField(6)
    with pytest.raises(InvalidInput):
        PrimeField(1)
    assert PrimeField(13).p == 13


def test_factor_x2_plus_1_over_f5():
    # oracle: brute-force roots; 2^2 = -1 in F5
    F = PrimeField(5)
    g = [1, 0, 1]
    assert sorted(brute_roots(F, g)) == [2, 3]
    fac = factor_univariate(F, g)
    assert fac == [([2, 1], 1), ([3, 1], 1)]


def test_factor_cubic_mod_t_of_paper_curve():
    # X^3 - X^2 = X^2 (X - 1); brute-force over F5 confirms roots {0, 1}
    F = PrimeField(5)
    g = [0, 0, -1 % 5, 1]
    fac = factor_univariate(F, g)
    assert fac == [([0, 1], 2), ([4, 1], 1)]


def test_factor_linear_identity():
    F = PrimeField(5)
    assert factor_univariate(F, [4, 1]) == [([4, 1], 1)]


def test_factor_zero_rejected():
    with pytest.raises(InvalidInput):
        factor_univariate(PrimeField(5), [])


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_factor_product_reconstructs_input(p):
    F = PrimeField(p)
    rng = random.Random(1000 + p)
    for _ in range(25):
        deg = rng.randrange(1, 9)
        g = [F.rand(rng) for _ in range(deg)] + [1 + rng.randrange(p - 1) if p > 2 else 1]
        g = pnormalize(F, g)
        fac = factor_univariate(F, g)
        prod = [g[-1]]
        for h, m in fac:
            assert h[-1] == F.one
            for _ in range(m):
                prod = pmul(F, prod, h)
        assert prod == g
        # pairwise distinct
        keys = [pkey(F, h) for h, _ in fac]
        assert len(keys) == len(set(keys))
        assert keys == sorted(keys)
        # low-degree factors are genuinely irreducible (no roots if deg in 2..3)
        for h, _ in fac:
            if 2 <= pdeg(h) <= 3:
                assert brute_roots(F, h) == []


def test_factor_over_extension_field():
    F5 = PrimeField(5)
    # z^2 + z + 2 is irreducible over F5 (no roots)
    E = ExtensionField(F5, [2, 1, 1])
    # (X - z)(X + z) = X^2 - z^2
    z = E.gen
    g = [E.neg(E.mul(z, z)), E.zero, E.one]
    fac = factor_univariate(E, g)
    assert len(fac) == 2 and all(m == 1 for _, m in fac)
    prod = [E.one]
    for h, m in fac:
        prod = pmul(E, prod, h)
    assert prod == g


def test_extension_rejects_reducible_modulus():
    F5 = PrimeField(5)
    with pytest.raises(InvalidInput):
        ExtensionField(F5, [1, 0, 1])  # X^2+1 splits over F5


def test_flatten_prime_and_single_step_are_identity():
    F5 = PrimeField(5)
    flat, emb, sec = flatten_tower(F5)
    assert flat is F5 and emb(3) == 3 and sec(2) == 2
    E = ExtensionField(F5, [2, 1, 1])
    flat, emb, sec = flatten_tower(E)
    assert flat is E
    x = (2, 3)
    assert emb(x) == x and sec(x) == x


def _check_iso(E, flat, emb, sec, rng, rounds=100):
    for _ in range(rounds):
        a = E.rand(rng)
        b = E.rand(rng)
        assert sec(emb(a)) == a
        assert emb(sec(flat.rand(rng))) is not None
        assert emb(E.mul(a, b)) == flat.mul(emb(a), emb(b))
        assert emb(E.add(a, b)) == flat.add(emb(a), emb(b))
    x = flat.rand(rng)
    assert emb(sec(x)) == x


@pytest.mark.parametrize("p", [2, 5])
def test_flatten_two_step_tower(p):
    k = PrimeField(p)
    rng = random.Random(77 + p)
    # find a degree-2 irreducible over k, extend, then a degree-2 over that
    def rand_irreducible(F, d):
        while True:
            g = [F.rand(rng) for _ in range(d)] + [F.one]
            if is_irreducible(F, g):
                return g
    E1 = ExtensionField(k, rand_irreducible(k, 2))
    E2 = ExtensionField(E1, rand_irreducible(E1, 2))
    flat, emb, sec = flatten_tower(E2)
    assert flat.degree == 4 and flat.base is k
    _check_iso(E2, flat, emb, sec, rng)
    # the images of the tower generators satisfy their minimal polynomials
    g1 = E2.embed_base(E1.gen)
    mp1 = _min_poly_over_prime(E2, g1)
    assert peval(flat, [flat.from_int(c) for c in mp1], emb(g1)) == flat.zero
    mp2 = _min_poly_over_prime(E2, E2.gen)
    assert peval(flat, [flat.from_int(c) for c in mp2], emb(E2.gen)) == flat.zero


def test_factor_determinism_across_runs():
    F = PrimeField(7)
    rng = random.Random(5)
    g = [F.rand(rng) for _ in range(10)] + [1]
    assert factor_univariate(F, g) == factor_univariate(F, g)
