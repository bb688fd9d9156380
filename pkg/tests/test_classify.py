import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from superconf.classify import (ChargeRule, Kind, NotDominant, UnknownPair, central_charge_rule, coroot_values,
                                cuspidal_predicate, dominant, eps1_gram, khat_dual, kind_predicate,
                                vanishing_criterion)
from conftest import rationals

Q = Fraction
h = Q(1, 2)


class TestDominant:

    def test_k6_half(self):
        assert dominant("K:6", (h, h, h))

    def test_k6_mixed(self):
        assert not dominant("K:6", (1, h, 2))

    def test_w3_negative(self):
        assert coroot_values("W:3", (0, 1, 0))[0] == -1
        assert not dominant("W:3", (0, 1, 0))


class TestPredicate:

    def test_w2_boundary(self):
        v = cuspidal_predicate("W:2", (h, -h), h)
        assert v.cuspidal and "(b)" in v.rule_fired

    def test_khat_b(self):
        v = cuspidal_predicate("Khat:4", (h, h, 1), Q(1, 4))
        assert v.cuspidal and "(b)" in v.rule_fired
        assert v.caveats

    def test_k6_small(self):
        for d in (0, Q(1, 4), Q(3, 2)):
            assert not cuspidal_predicate("K:6", (h, h, h), d).cuspidal

    def test_ck6_defining(self):
        assert cuspidal_predicate("CK6", (h, h, h), Q(1, 4)).cuspidal

    def test_not_dominant(self):
        with pytest.raises(NotDominant):
            cuspidal_predicate("K:6", (1, h, 2), 0)

    def test_json(self):
        assert set(cuspidal_predicate("K:3", (h,), Q(1, 4)).to_json()) == {"cuspidal", "rule", "caveats"}


FAMILY_LAMS = {
    "W:2": [(h, -h), (2, 1), (Q(3, 2), h), (3, 0)],
    "S:2:g=1/3": [(1,), (2,), (3,)],
    "Khat:4": [(h, h, 1), (h, h, -1), (0, 1, 2), (1, 1, 0), (Q(1, 4), Q(3, 4), Q(3, 2))],
    "K:3": [(h,), (1,), (Q(3, 2),)],
    "K:6": [(h, h, h), (1, 1, 1), (0, 1, 1)],
    "CK6": [(h, h, h), (1, 1, 1), (0, 1, 2)],
}


@settings(max_examples=40)
@given(st.sampled_from([(f, l) for f, ls in FAMILY_LAMS.items() for l in ls]), rationals(),
       st.lists(rationals(), min_size=5, max_size=5))
def test_u_independent(fl, delta, us):
    fam, lam = fl
    verdicts = {(v.cuspidal, v.rule_fired) for v in (cuspidal_predicate(fam, lam, delta, u) for u in us)}
    assert len(verdicts) == 1


@given(st.sampled_from([h, 1, Q(3, 2), 2]), st.sampled_from([Q(1, 4), h, Q(3, 4), Q(-1, 4), Q(5, 4), Q(-1, 2)]), rationals())
def test_khat_duality(l2, delta, u):
    lam = (1 - l2, l2, 2 * l2)
    lam_d, delta_d, u_d = khat_dual(lam, delta, u)
    a, b = cuspidal_predicate("Khat:4", lam, delta, u), cuspidal_predicate("Khat:4", lam_d, delta_d, u_d)
    assert a.cuspidal == b.cuspidal
    if a.cuspidal:
        assert {a.rule_fired[:10], b.rule_fired[:10]} == {"Khat(4)(b)", "Khat(4)(c)"}


class TestOracle:

    def test_khat_quarter(self):
        assert vanishing_criterion("Khat:4", (h, h, 1), Q(1, 4))

    def test_khat_three_quarter_sides_with_theorem(self):
        assert not vanishing_criterion("Khat:4", (h, h, 1), Q(3, 4))
        assert not cuspidal_predicate("Khat:4", (h, h, 1), Q(3, 4)).cuspidal

    def test_w2_line(self):
        for d in (h, Q(1, 3), Q(-2, 5)):
            assert vanishing_criterion("W:2", (1 - d, -d), d)

    def test_w2_off_line(self):
        assert not vanishing_criterion("W:2", (h, -h), Q(1, 3))

    @pytest.mark.parametrize("fam,lam,delta", [
        ("W:2", (1, 0), Q(1, 3)), ("S:2:g=1/3", (1,), Q(1)), ("S:2:g=1/3", (1,), Q(1, 2)),
        ("K:3", (h,), Q(1, 4)), ("K:3", (h,), Q(1, 3)), ("Khat:4", (h, h, -1), Q(3, 4)),
        ("Khat:4", (-h, Q(3, 2), 3), Q(-1, 4)), ("Khat:4", (-h, Q(3, 2), -3), Q(5, 4)),
    ])
    def test_agrees_with_predicate(self, fam, lam, delta):
        assert vanishing_criterion(fam, lam, delta) == cuspidal_predicate(fam, lam, delta).cuspidal

    def test_gram_positive_above_boundary(self):
        assert eps1_gram("Khat:4", (1, 1, 0), Q(1, 3)) > 0
        assert eps1_gram("K:3", (1,), Q(1, 3)) > 0


class TestKind:

    def test_m3_second(self):
        assert kind_predicate(3, (1, 1, 1)) is Kind.Second

    def test_m3_first(self):
        assert kind_predicate(3, (0, 1, 1)) is Kind.First

    def test_m2_exclusion(self):
        assert kind_predicate(2, (1, 1), h, lam_c=2) is Kind.First
        assert kind_predicate(2, (1, 1), Q(1, 3), lam_c=2) is Kind.Second


class TestCharge:

    def test_khat(self):
        assert central_charge_rule("K:4", "psi") is ChargeRule.ArbitraryCharge

    def test_psi1(self):
        assert central_charge_rule("K:4", "psi1") is ChargeRule.ZeroChargeOnly

    def test_k3(self):
        assert central_charge_rule("K:3", "psi1") is ChargeRule.ForbidsCuspidal

    def test_unknown(self):
        with pytest.raises(UnknownPair):
            central_charge_rule("K:5", "psi")


def test_gram_drops_on_special_lines():
    assert eps1_gram("W:2", (Q(5, 2), h), Q(-3, 2)) == 0
    assert eps1_gram("S:2:g=1/3", (2,), 2) == 0
    assert eps1_gram("W:2", (Q(5, 2), h), Q(-3, 7)) > 0
