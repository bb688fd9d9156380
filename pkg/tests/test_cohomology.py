import itertools
from fractions import Fraction

import pytest

from superconf.algebras import KHat4, VirAlg, VirHAlg, make_algebra, parse_element
from superconf.cohomology import (CENTRAL, DERIVED, PRINTED, Cocycle, CocycleId, DomainMismatch, UnderdeterminedSlot,
                                  _d_residual, _psi, central_extend, cocycle_check, cocycle_eval, d_cocycle_check,
                                  exceptional_D, extension_identity_check, h2_rank, k_basis, khat_std)
from superconf.grassmann import popcount
from superconf.liecore import supercomm_sign

K4 = make_algebra("K:4")
VH = VirHAlg()
Q = Fraction


def P(alg, s):
    return parse_element(alg, s)


class TestEval:

    def test_psi_omega(self):
        assert cocycle_eval("psi", P(K4, "D@2"), P(K4, "zeta1eta1zeta2eta2@-2")) == 1

    def test_psi_equal_degrees(self):
        assert cocycle_eval("psi", P(K4, "zeta1eta1@1"), P(K4, "zeta2eta2@-1")) == 0

    def test_phi3(self):
        assert cocycle_eval("phi3", P(VH, "E@2"), P(VH, "E@-2")) == 8

    def test_phi3_on_vir(self):
        V = VirAlg()
        assert cocycle_eval("phi3", P(V, "E@3"), P(V, "E@-3")) == 27

    def test_unbalanced_vanishes(self):
        assert cocycle_eval("phi3", P(VH, "E@2"), P(VH, "E@-1")) == 0

    def test_psi1_unprinted(self):
        with pytest.raises(UnderdeterminedSlot):
            cocycle_eval("psi1", P(K4, "zeta1@1"), P(K4, "eta1@-1"))

    def test_domain(self):
        with pytest.raises(DomainMismatch):
            cocycle_eval("psi", P(VH, "E@1"), P(VH, "E@-1"))


@pytest.mark.parametrize("cid,alg,window", [
    ("psi", "K:4", (-2, 2)),
    ("phi1", "VirH", (-6, 6)),
    ("phi2", "VirH", (-6, 6)),
    ("phi3", "VirH", (-6, 6)),
    ("psi3", "W:2", (-3, 3)),
    ("psi4", "W:1", (-3, 3)),
    ("psi3", "S:2:g=1/3", (-2, 2)),
])
def test_cocycle_identity(cid, alg, window):
    rep = cocycle_check(cid, make_algebra(alg), window)
    assert rep.checked > 0
    assert rep.ok, rep.violations[:3]


def test_partial_cocycles_skip_unprinted():
    rep = cocycle_check("psi1", K4, (-1, 1))
    assert rep.ok and rep.skipped > 0


def test_psi_without_half_fails():
    def broken(alg, a, b):
        k = popcount(a[0])
        v = _psi(alg, a, b)
        return v * 2 if k % 2 else v
    rep = cocycle_check(Cocycle("psi", broken, True, "K(4)"), K4, (-1, 1))
    assert not rep.ok


def test_psi4_literal_reading_fails():
    # t^n d/dt = -E_{n-1}: psi4(E_k, h_m) = -(k+1)^2 when k + 1 + m = 0
    def lit(a, b):
        (ta, n), (tb, m) = a, b
        if ta == "E" and tb == "h" and n + 1 + m == 0:
            return Q(-(n + 1) ** 2)
        if ta == "h" and tb == "E" and m + 1 + n == 0:
            return Q((m + 1) ** 2)
        return Q(0)

    def ev(terms, z):
        return sum((c * lit(k, z) for k, c in terms), Q(0))

    keys = [k for k in VH.basis(-3, 3)]
    bad = 0
    for x, y, z in itertools.product(keys, repeat=3):
        if x[0] == y[0] == z[0] == "h":
            continue  # h-h slots are not printed
        bad += bool(ev(VH.bracket_keys(x, y), z) + ev(VH.bracket_keys(y, z), x) + ev(VH.bracket_keys(z, x), y))
    assert bad > 0


class TestCentralExtension:

    def test_matches_khat(self):
        assert extension_identity_check((-1, 1)).ok

    def test_virasoro(self):
        V = central_extend(VirAlg(), "phi3")
        for n in range(-3, 4):
            assert V.bracket(V.lift(P(VirAlg(), f"E@{n}")), V.lift(P(VirAlg(), f"E@{-n}"))).coeff(CENTRAL) == n ** 3

    def test_central(self):
        ext = central_extend(K4, "psi")
        for k in K4.basis(-1, 1):
            assert not ext.bracket(ext.key(k), ext.key(CENTRAL))

    def test_partial_rejected(self):
        with pytest.raises(UnderdeterminedSlot):
            central_extend(K4, "psi2")


def test_h2_rank():
    assert h2_rank(6) == 5


class TestExceptional:
    KH = khat_std(True)

    def D(self, s, norm=PRINTED):
        return exceptional_D(P(self.KH, s), norm)

    def test_c(self):
        assert self.D("c@3") == {(0, 6): 1}

    @pytest.mark.parametrize("n", [-2, 2, 3])
    def test_scalar(self, n):
        assert self.D(f"D@{n}") == {(15, 2 * n): 2 * (n ** 3 - n)}

    def test_one(self):
        assert self.D("D@0") == {}

    def test_printed_fails(self):
        assert not d_cocycle_check((-1, 1), PRINTED).ok

    def test_derived(self):
        rep = d_cocycle_check((-1, 1), DERIVED)
        assert rep.ok and rep.checked > 0

    def test_k_basis(self):
        assert len(k_basis(self.KH)) == 17

    def test_dropping_first_order_term_fails(self):
        base = lambda x: exceptional_D(x, DERIVED)

        def broken(x):
            out = dict(base(x))
            for (m, t2), c in x.terms.items():
                if m == 0 and t2:
                    n = Q(t2, 2)
                    out[(15, t2)] = out.get((15, t2), 0) + c * n  # undo the -D(f) part of D^3 - D
            return {k: v for k, v in out.items() if v}
        assert not d_cocycle_check((-1, 1), Dfn=broken).ok

    @pytest.mark.parametrize("x,y", [("D@1", "c@-1"), ("xi1@1/2", "xi2@1/2"), ("xi1xi2@1", "xi3@-1/2")])
    def test_pairs(self, x, y):
        (a,), (b,) = P(self.KH, x).terms, P(self.KH, y).terms
        assert _d_residual(self.KH, a, b, lambda e: exceptional_D(e, DERIVED)) == {}
