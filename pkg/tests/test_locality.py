from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superconf import locality as L
from superconf.algebras import make_algebra

Q = Fraction


@pytest.fixture(scope="module")
def KD():
    return make_algebra("K:4:D")


@pytest.fixture(scope="module")
def K2():
    return make_algebra("K2:4")


class TestLocalityOrder:

    def test_d_d(self, KD):
        N = L.locality_order(L.family(KD, "1"), L.family(KD, "1"), (-6, 6), 4)
        assert N is not None and N <= 2

    def test_zeta1_zeta2_bracket_is_derivative_kernel(self, KD):
        for n in range(-2, 3):
            for m in range(-2, 3):
                got = KD.bracket(KD.parse_name("zeta1", n), KD.parse_name("zeta2", m))
                want = KD.parse_name("zeta1zeta2", n + m) * Q(m - n, 2)
                assert got.terms == want.terms

    def test_zeta1_zeta2_order(self, KD):
        assert L.locality_order(L.family(KD, "zeta1"), L.family(KD, "zeta2"), (-6, 6), 4) == 2

    def test_commuting_pair(self, KD):
        assert L.locality_order(L.family(KD, "zeta1"), L.family(KD, "zeta1"), (-6, 6), 4) == 0

    def test_extension_family_commutes(self):
        K = make_algebra("Khat:4")
        assert L.locality_order(L.family(K, "c"), L.family(K, "c"), (-6, 6), 4) == 0

    def test_window_too_small(self, KD):
        with pytest.raises(L.WindowTooSmall):
            L.locality_order(L.family(KD, "1"), L.family(KD, "1"), (-2, 2), 4)

    def test_mixed_algebras(self, KD):
        W = make_algebra("W:2")
        with pytest.raises(ValueError):
            L.locality_order(L.family(KD, "1"), L.family(W, "D"), (-6, 6), 2)


class TestModeRules:

    @pytest.mark.parametrize("rule,n,ok", [
        (L.ModeRule.Ramond, 3, True), (L.ModeRule.Ramond, Q(1, 2), False),
        (L.ModeRule.NSOdd, Q(-1, 2), True), (L.ModeRule.NSOdd, 1, False),
        (L.ModeRule.TwistedEven, -2, True), (L.ModeRule.TwistedOdd, -2, False),
    ])
    def test_legal(self, rule, n, ok):
        assert rule.legal(Q(n)) is ok

    def test_modes(self):
        assert L.ModeRule.TwistedOdd.step == 2
        fam = L.ModeFamily(make_algebra("K2:4"), "a1", L.ModeRule.TwistedOdd)
        assert fam.modes(-4, 4) == [-3, -1, 1, 3]

    def test_auto_rule(self, K2):
        assert L.family(K2, "zeta2").rule is L.ModeRule.TwistedEven
        assert L.family(K2, "a1").rule is L.ModeRule.TwistedOdd


class TestSemiLocality:

    def test_generator_pair(self, K2):
        M = L.semilocality_order(L.family(K2, "zeta2"), L.family(K2, "eta2"), (-8, 8), 4)
        assert M is not None and M <= 3

    def test_sigma_mixed(self, K2):
        M = L.semilocality_order(L.family(K2, "a1"), L.family(K2, "zeta2"), (-8, 8), 4)
        assert M is not None

    def test_commuting(self, K2):
        assert L.semilocality_order(L.family(K2, "zeta2"), L.family(K2, "zeta2"), (-8, 8), 4) == 0

    def test_window_too_small(self, K2):
        with pytest.raises(L.WindowTooSmall):
            L.semilocality_order(L.family(K2, "zeta2"), L.family(K2, "eta2"), (-4, 4), 4)


@pytest.mark.parametrize("alg_id", ["Khat:4", "W:2", "K:4"])
def test_generator_sets_local(alg_id):
    rep = L.generator_report(alg_id, (-8, 8), 4)
    assert rep.ok, rep.violations[:3]


def test_k2_generator_set_semilocal():
    rep = L.generator_report("K2:4", (-8, 8), 4)
    assert rep.ok and rep.checked == 136


def test_k4_generators_use_d_extension():
    assert L.generator_set("K:4").alg_id == "K:4:D"
    with pytest.raises(KeyError):
        L.generator_set("CK6")


class TestMaurerCartan:

    def test_a1_am1(self):
        assert L.mc_bracket(L.mc((1, 1)), L.mc((-1, 1))) == L.mc((0, 2), (1, -1), (-1, -1))

    @pytest.mark.parametrize("n", range(-4, 5))
    def test_self_bracket(self, n):
        assert L.mc_bracket(L.mc((n, 1)), L.mc((n, 1))) == {}

    def test_delta2(self):
        d = L.mc_delta(2)
        assert d == L.mc((-1, -1), (0, 3), (1, -3), (2, 1))
        assert L.mc_bracket(L.mc((-1, 1)), d) == L.mc_scale(d, 2)

    def test_delta0(self):
        with pytest.raises(ValueError):
            L.mc_delta(0)

    def test_derived_examples(self):
        assert L.mc_derived_test(L.mc((1, 1), (0, -2), (-1, 1)))
        assert not L.mc_derived_test(L.mc((0, 1)))
        assert all(L.mc_derived_test(L.mc_delta(s * n)) for n in range(1, 7) for s in (1, -1))

    def test_jacobi(self):
        rep = L.mc_jacobi(6)
        assert rep.ok and rep.checked == 13 ** 3

    def test_relations(self):
        assert L.mc_relations(6).ok


mc_elems = st.dictionaries(st.integers(-6, 6), st.fractions(max_denominator=5).filter(bool), max_size=4)


@given(mc_elems, mc_elems)
def test_bracket_lands_in_derived(x, y):
    assert L.mc_derived_test(L.mc_bracket(x, y))


@given(mc_elems, mc_elems)
def test_bracket_antisymmetric(x, y):
    assert L.mc_bracket(x, y) == L.mc_scale(L.mc_bracket(y, x), -1)
