import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superconf.grassmann import (SPLIT, STD, BasisMismatch, DimensionMismatch, GrassElement, basis_change,
                                 gen_names, gr_mul, gr_poisson, gr_trace, popcount)


def el(s, N=4, kind=SPLIT):
    return GrassElement.parse(kind, N, s)


ONE = GrassElement.one(SPLIT, 4)
OMEGA = el("zeta1eta1zeta2eta2")


class TestProduct:

    def test_ordered(self):
        assert gr_mul(el("xi1", 2, STD), el("xi2", 2, STD)) == el("xi1xi2", 2, STD)

    def test_anticommute(self):
        assert gr_mul(el("xi2", 2, STD), el("xi1", 2, STD)) == -el("xi1xi2", 2, STD)

    def test_omega(self):
        assert gr_mul(el("zeta1eta1"), el("zeta2eta2")) == OMEGA

    def test_square_of_odd_vanishes(self):
        assert gr_mul(el("zeta1"), el("zeta1")).is_zero()

    def test_kind_mismatch(self):
        with pytest.raises(BasisMismatch):
            gr_mul(el("xi1", 4, STD), el("zeta1"))


class TestPoisson:

    def test_split_pair(self):
        assert gr_poisson(el("zeta1"), el("eta1")) == ONE

    def test_unwritten_zero(self):
        assert gr_poisson(el("zeta1"), el("zeta2")).is_zero()

    def test_leibniz_example(self):
        assert gr_poisson(el("zeta1eta1"), el("eta1")) == -el("eta1")

    def test_odd_xi(self):
        xi = el("xi", 5)
        assert gr_poisson(xi, xi) == GrassElement.one(SPLIT, 5)


def test_trace():
    assert gr_trace(OMEGA) == 1
    assert gr_trace(el("zeta1eta1")) == 0
    assert gr_trace(OMEGA.scale(3) + el("zeta1zeta2")) == 3


class TestBasisChange:

    @pytest.mark.parametrize("N", [2, 3, 4, 5])
    def test_generators_keep_brackets(self, N):
        names = gen_names(SPLIT, N)
        for a, b in itertools.product(names, repeat=2):
            x, y = el(a, N), el(b, N)
            lhs = basis_change(gr_poisson(x, y), STD)
            assert gr_poisson(basis_change(x, STD), basis_change(y, STD)) == lhs

    def test_zeta_isotropic(self):
        z = basis_change(el("zeta1"), STD)
        assert gr_poisson(z, z).is_zero()

    def test_roundtrip(self):
        a = OMEGA.scale(Fraction(2, 3)) + el("zeta1eta2") - el("eta1")
        assert basis_change(basis_change(a, STD), SPLIT) == a

    def test_xi_prime(self):
        x = el("zeta1") + el("eta1")
        assert gr_poisson(x, x) == ONE.scale(2)

    def test_dimension_guard(self):
        with pytest.raises(DimensionMismatch):
            basis_change(el("zeta1"), STD, N=6)


@st.composite
def grass(draw, N=4, kind=SPLIT):
    masks = draw(st.lists(st.integers(0, (1 << N) - 1), min_size=1, max_size=4))
    return GrassElement(kind, N, {m: draw(st.integers(-3, 3)) for m in masks})


def _mono(N, m):
    return GrassElement(SPLIT, N, {m: 1})


def _sign(a, b):
    return -1 if (a & 1) and (b & 1) else 1


@given(st.integers(2, 6).flatmap(lambda N: st.tuples(st.just(N), *[st.integers(0, (1 << N) - 1)] * 3)))
def test_basis_triples(args):
    N, a, b, c = args
    x, y, z = _mono(N, a), _mono(N, b), _mono(N, c)
    pa, pb, pc = popcount(a), popcount(b), popcount(c)
    # supercommutative and associative product
    assert gr_mul(x, y) == gr_mul(y, x).scale(_sign(pa, pb))
    assert gr_mul(gr_mul(x, y), z) == gr_mul(x, gr_mul(y, z))
    # super-antisymmetry and super-Jacobi
    assert gr_poisson(x, y) == gr_poisson(y, x).scale(-_sign(pa, pb))
    lhs = gr_poisson(x, gr_poisson(y, z))
    rhs = gr_poisson(gr_poisson(x, y), z) + gr_poisson(y, gr_poisson(x, z)).scale(_sign(pa, pb))
    assert lhs == rhs
    # Leibniz in the right slot: [x, yz] = [x,y]z + (-1)^{|x||y|} y[x,z]
    assert gr_poisson(x, gr_mul(y, z)) == gr_mul(gr_poisson(x, y), z) + gr_mul(y, gr_poisson(x, z)).scale(_sign(pa, pb))


@given(grass(), grass())
def test_degree_laws(x, y):
    for k1, k2 in itertools.product(x.degrees(), y.degrees()):
        xa, yb = x.homogeneous_part(k1), y.homogeneous_part(k2)
        assert gr_mul(xa, yb).degrees() <= {k1 + k2}
        assert gr_poisson(xa, yb).degrees() <= {k1 + k2 - 2}


@given(grass(5))
def test_roundtrip_odd(x):
    assert basis_change(basis_change(x, STD), SPLIT) == x
