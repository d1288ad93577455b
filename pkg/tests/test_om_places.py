import math
import random

import pytest

from rrspace.errors import InvalidInput
from rrspace.field_tower import PrimeField, pnormalize
from rrspace.funcfield import CurveModel, Rat, bi_mul, bi_reduce_coeffs, amul
from rrspace.om_places import (
    BasePrime, decompose, lift_factor, valuation, bipoly_valuation,
)

F5 = PrimeField(5)


def paper_curve():
    return CurveModel(5, [[0, 0, 1], [], [4], [1]])


def quartic_curve(p):
    # (X^2+1)^2 + tX + t + t^2
    return CurveModel(p, [[1 % p, 1, 1], [0, 1], [2], [], [1]])


def bp_t(model):
    return BasePrime.finite(model.F, [0, 1])


def test_decompose_cubic_over_t():
    m = paper_curve()
    places = decompose(m, bp_t(m))
    assert len(places) == 3
    assert all(pl.e == 1 and pl.f == 1 for pl in places)
    # canonical order: x+t, x-t(=x+4t), x-1(=x+4); indices 0,1,2
    approx = [pl.om.approx for pl in places]
    assert approx[0] == [[0, 1], [1]]       # X + t
    assert approx[1] == [[0, 4], [1]]       # X - t
    assert approx[2] == [[4], [1]]          # X - 1
    assert [pl.index for pl in places] == [0, 1, 2]


def test_decompose_cubic_over_t_minus_1():
    m = paper_curve()
    places = decompose(m, BasePrime.finite(F5, [4, 1]))
    assert len(places) == 2
    assert {(pl.e, pl.f) for pl in places} == {(1, 1), (1, 2)}
    # degree-1 place first (sorted by key-degree sequence)
    assert places[0].f == 1 and places[0].om.approx == [[3], [1]]  # X + 3
    assert places[1].om.approx == [[2], [1], [1]]                  # X^2 + X + 2


def test_decompose_cubic_at_infinity():
    m = paper_curve()
    places = decompose(m, BasePrime.infinity(F5))
    assert len(places) == 1
    pl = places[0]
    assert pl.e == 3 and pl.f == 1
    # type [u, y, y^3 + u]: one committed key polynomial y, approx y^3 + u
    assert len(pl.om.key_chain) == 1
    assert pl.om.key_chain[0] == [[], [1]]
    assert pl.om.approx == [[0, 1], [], [], [1]]


def test_decompose_quartic_over_f7_single_deep_place():
    # paper's Example: irreducible in k((t))[X] when X^2+1 is irreducible
    m = quartic_curve(7)
    places = decompose(m, bp_t(m))
    assert len(places) == 1
    pl = places[0]
    assert (pl.e, pl.f) == (2, 2)
    assert pl.e * pl.f == 4
    # chain [t, X, X^2+1, approx]: one committed level of degree 2
    assert len(pl.om.key_chain) == 1
    assert pl.om.key_chain[0] == [[1], [], [1]]  # X^2 + 1


def test_decompose_quartic_over_f5_splits():
    # over F5, X^2+1 = (X+2)(X+3): two ramified places instead
    m = quartic_curve(5)
    places = decompose(m, bp_t(m))
    assert len(places) == 2
    assert all((pl.e, pl.f) == (2, 1) for pl in places)
    assert sum(pl.e * pl.f for pl in places) == 4


def test_decompose_rejects_reducible_prime():
    with pytest.raises(InvalidInput):
        BasePrime.finite(F5, [1, 0, 1])


def test_sum_ef_equals_n_on_random_primes():
    m = paper_curve()
    for poly in ([0, 1], [4, 1], [1, 1], [2, 1], [3, 1], [2, 0, 1]):
        try:
            bp = BasePrime.finite(F5, poly)
        except InvalidInput:
            continue
        places = decompose(m, bp)
        assert sum(pl.e * pl.f for pl in places) == 3
        assert all(pl.degree == pl.f * bp.deg for pl in places)


def test_lift_factor_example_3_11():
    m = paper_curve()
    places = decompose(m, bp_t(m))
    p1 = places[1]  # X - t branch
    lifted = lift_factor(p1, 3)
    # f1 = X - t - t^2/2 + O(t^3); 1/2 = 3 in F5 so X - t - 3t^2 = X + 4t + 2t^2
    assert lifted.lifted_factor == [[0, 4, 2], [1]]
    assert lifted.precision == 3
    # idempotent
    again = lift_factor(lifted, 3)
    assert again.lifted_factor == lifted.lifted_factor


def test_lifted_product_reconstructs_f():
    m = paper_curve()
    for N in (3, 7, 12):
        for poly in ([0, 1], [4, 1]):
            bp = BasePrime.finite(F5, poly)
            places = decompose(m, bp)
            prod = [[1]]
            for pl in places:
                prod = bi_mul(F5, prod, lift_factor(pl, N).lifted_factor)
            pN = [1]
            for _ in range(N):
                pN = amul(F5, pN, poly)
            assert bi_reduce_coeffs(F5, prod, pN) == \
                bi_reduce_coeffs(F5, m.f, pN)


def test_lifted_product_at_infinity():
    m = paper_curve()
    places = decompose(m, BasePrime.infinity(F5))
    N = 6
    prod = [[1]]
    for pl in places:
        prod = bi_reduce_coeffs(F5, bi_mul(F5, prod, lift_factor(pl, N).lifted_factor),
                                [0] * N + [1])
    assert prod == bi_reduce_coeffs(F5, m.f_infinity, [0] * N + [1])


def test_valuations_of_example_3_11():
    m = paper_curve()
    places = decompose(m, bp_t(m))
    by_approx = {tuple(tuple(c) for c in pl.om.approx): pl for pl in places}
    p1 = by_approx[((0, 4), (1,))]  # X - t
    p2 = by_approx[((0, 1), (1,))]  # X + t
    p3 = by_approx[((4,), (1,))]    # X - 1
    # q = (x-1+t)(x-t)/t
    e1 = m.from_bipoly(bi_mul(F5, [[4, 1], [1]], [[0, 4], [1]]), [0, 1])
    assert valuation(p1, e1) == 1
    assert valuation(p2, e1) == 0
    assert valuation(p3, e1) == 0
    t_elt = m.t()
    assert all(valuation(pl, t_elt) == 1 for pl in (p1, p2, p3))
    xm1 = m.from_bipoly([[4], [1]])
    assert valuation(p3, xm1) == 2
    assert valuation(p1, xm1) == 0


def test_valuation_trivial_cases():
    m = paper_curve()
    places = decompose(m, bp_t(m))
    assert valuation(places[0], m.zero()) == math.inf
    assert valuation(places[0], m.one()) == 0


def test_valuation_at_infinity():
    m = paper_curve()
    pinf = decompose(m, BasePrime.infinity(F5))[0]
    assert valuation(pinf, m.t()) == -3     # t^{-1} B_inf = p^3
    # y = x/t has valuation 1 (y B_inf = p)
    y = m.x().scale(Rat(F5, [1], [0, 1]))
    assert valuation(pinf, y) == 1
    assert valuation(pinf, m.x()) == 1 - 3  # v(x) = v(y) + lam*v(t)


def test_valuation_axioms_random():
    m = paper_curve()
    rng = random.Random(123)
    places = decompose(m, bp_t(m)) + decompose(m, BasePrime.infinity(F5))

    def rnd_elt():
        num = [pnormalize(F5, [rng.randrange(5) for _ in range(3)]) for _ in range(3)]
        den = pnormalize(F5, [rng.randrange(5) for _ in range(2)]) or [1]
        return m.from_bipoly(num, den)

    for _ in range(6):
        a, b = rnd_elt(), rnd_elt()
        if not a or not b:
            continue
        for pl in places:
            va, vb = valuation(pl, a), valuation(pl, b)
            assert valuation(pl, a * b) == va + vb
            s = a + b
            vs = valuation(pl, s) if s else math.inf
            assert vs >= min(va, vb)
            if va != vb:
                assert vs == min(va, vb)


def test_ramification_of_base_prime():
    # v_q(p) = e_q for every place over p
    m = paper_curve()
    for poly in ([0, 1], [4, 1]):
        bp = BasePrime.finite(F5, poly)
        p_elt = m.from_bipoly([poly])
        for pl in decompose(m, bp):
            assert valuation(pl, p_elt) == pl.e


def test_decomposition_determinism():
    m = paper_curve()
    a = decompose(m, bp_t(m))
    b = decompose(m, bp_t(m))
    assert [pl.om.approx for pl in a] == [pl.om.approx for pl in b]
    assert [(pl.e, pl.f, pl.index) for pl in a] == [(pl.e, pl.f, pl.index) for pl in b]


def test_wild_ramification_char2():
    # X^2 + tX + t over F2: one wild place with e = 2 over (t)
    m = CurveModel(2, [[0, 1], [0, 1], [1]])
    places = decompose(m, BasePrime.finite(m.F, [0, 1]))
    assert len(places) == 1 and places[0].e == 2 and places[0].f == 1
    prod = lift_factor(places[0], 5).lifted_factor
    assert bi_reduce_coeffs(m.F, prod, [0] * 5 + [1]) == \
        bi_reduce_coeffs(m.F, m.f, [0] * 5 + [1])


def test_wild_ramification_char3_at_infinity():
    # X^3 - X - t over F3: e = 3 wild at infinity
    m = CurveModel(3, [[0, 2], [2], [], [1]])
    places = decompose(m, BasePrime.infinity(m.F))
    assert len(places) == 1 and places[0].e == 3
    assert valuation(places[0], m.t()) == -3
