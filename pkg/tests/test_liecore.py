from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superconf.algebras import make_algebra, parse_algebra_id, parse_element
from superconf.liecore import (FamilyMismatch, FaultyAlgebra, IllegalKey, bracket, jacobi_check, supercomm_sign,
                               triangular_split, weight_of)

ALGS = {a: make_algebra(parse_algebra_id(a)) for a in ("K:4", "W:2", "Vir", "K:3", "Khat:4", "S:2:g=1/3")}
K4 = ALGS["K:4"]


def E(alg, s):
    return parse_element(ALGS[alg] if isinstance(alg, str) else alg, s)


def key(alg, s):
    (k,) = E(alg, s).terms
    return k


class TestBracket:

    def test_virasoro(self):
        assert bracket(ALGS["Vir"], E("Vir", "E@2"), E("Vir", "E@-1")) == E("Vir", "3*E@1")

    def test_zeta_eta_constant(self):
        assert bracket(K4, E(K4, "zeta1@0"), E(K4, "eta1@0")) == E(K4, "D@0")

    def test_zeta_eta_modes(self):
        assert bracket(K4, E(K4, "zeta1@1"), E(K4, "eta1@-1")) == E(K4, "D@0 - zeta1eta1@0")

    def test_family_mismatch(self):
        with pytest.raises(FamilyMismatch):
            bracket(K4, E(K4, "D@0"), E("W:2", "D@0"))


@pytest.mark.parametrize("alg", ["K:4", "W:2"])
def test_jacobi_window(alg):
    rep = jacobi_check(ALGS[alg], (-2, 2))
    assert rep.checked > 0
    assert rep.violations == []


def test_jacobi_fault_names_triple():
    rep = jacobi_check(FaultyAlgebra(K4), (-1, 1))
    assert rep.violations
    assert {"x", "y", "z", "residual"} <= set(rep.violations[0])
    assert set(rep.to_json()) >= {"checked", "violations"}


class TestWeights:

    def test_zeta1(self):
        w = weight_of(K4, key(K4, "zeta1@0"))
        assert w.weight == (1, 0)
        assert w.fdeg == 2
        assert w.parity == 1

    def test_D(self):
        w = weight_of(K4, key(K4, "D@3"))
        assert w.weight == (0, 0) and w.fdeg == 0

    def test_eta1_zeta2(self):
        assert weight_of(K4, key(K4, "eta1zeta2@0")).weight == (-1, 1)

    def test_illegal(self):
        omega0 = (15, 0)  # the top monomial at t^0 is not in the derived algebra
        with pytest.raises(IllegalKey):
            weight_of(K4, omega0)


class TestTriangular:

    def test_positive(self):
        x = E(K4, "zeta1@0")
        assert triangular_split(K4, x) == (x, K4.elem(), K4.elem())

    def test_cartan_part(self):
        x = E(K4, "D@0")
        assert triangular_split(K4, x) == (K4.elem(), x, K4.elem())

    def test_termwise(self):
        p, z, m = triangular_split(K4, E(K4, "zeta1@0 + eta1@0"))
        assert (p, z, m) == (E(K4, "zeta1@0"), K4.elem(), E(K4, "eta1@0"))


def _pairs(alg, lo=-1, hi=1):
    ks = ALGS[alg].basis(lo, hi)
    return st.tuples(st.sampled_from(ks), st.sampled_from(ks))


@pytest.mark.parametrize("alg", ["K:4", "W:2", "K:3", "Khat:4", "S:2:g=1/3"])
@given(data=st.data())
def test_bracket_laws(alg, data):
    A = ALGS[alg]
    a, b = data.draw(_pairs(alg))
    x, y = A.key(a), A.key(b)
    xy, yx = A.bracket(x, y), A.bracket(y, x)
    s = supercomm_sign(A.parity(a), A.parity(b))
    assert xy == yx * (-s)
    for k in xy.terms:
        assert A.tdeg(k) == A.tdeg(a) + A.tdeg(b)
        assert A.weight(k) == tuple(p + q for p, q in zip(A.weight(a), A.weight(b)))


@given(st.lists(st.integers(0, 40), min_size=1, max_size=6), st.lists(st.integers(-5, 5), min_size=6, max_size=6))
def test_triangular_split_laws(idx, coeffs):
    ks = K4.basis(-1, 1)
    x = K4.elem({ks[i % len(ks)]: Fraction(c) for i, c in zip(idx, coeffs)})
    p, z, m = triangular_split(K4, x)
    assert p + z + m == x
    assert all(K4.fdeg(k) > 0 for k in p.terms)
    assert all(K4.fdeg(k) == 0 for k in z.terms)
    assert all(K4.fdeg(k) < 0 for k in m.terms)
    assert triangular_split(K4, p)[0] == p
