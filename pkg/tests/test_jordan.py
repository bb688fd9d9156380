from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from superconf import jordan as J

Q = Fraction


@pytest.fixture(scope="module")
def k4():
    return J.k4_setup()


@pytest.fixture(scope="module")
def ck6():
    return J.ck6_setup()


@pytest.fixture(scope="module")
def tables(k4, ck6):
    return J.jor_table(ck6.triple, ck6.families), J.jor_table(k4.triple, k4.families)


def _parity(*setups):
    return {f.label: f.parity for s in setups for f in s.families}


class TestTriples:

    @pytest.mark.parametrize("which", ["k4", "ck6"])
    def test_relations_and_spectrum(self, which, request):
        rep = request.getfixturevalue(which).triple.check((-3, 3))
        assert rep.ok
        assert "[Fraction(-2, 1), Fraction(0, 1), Fraction(2, 1)]" in rep.notes[0]

    def test_broken_triple(self, k4):
        t = k4.triple
        rep = J.Sl2Triple(t.e, t.h * 2, t.f).check((-1, 1))
        assert not rep.ok


class TestProduct:

    def test_zeta2_zeta2(self, k4):
        K = k4.alg
        p = J.jor_product(k4.triple, K.parse_name("zeta2", 1), K.parse_name("zeta2", 2))
        # 1/4 (f D(g) - D(f) g) at f = t, g = t^2 is 1/4 t^3
        assert p.terms == (k4.families[0].build(3) * Q(1, 4)).terms

    def test_h_h_zero(self, ck6):
        H = ck6.families[3]
        for n in (-1, 0, 2):
            assert not J.jor_product(ck6.triple, H.build(n), H.build(1 - n)).terms

    def test_wrong_eigenspace(self, k4):
        with pytest.raises(J.WrongEigenspace):
            J.jor_product(k4.triple, k4.triple.h, k4.triple.e)

    def test_spans_deficient(self, k4):
        fams = (k4.families[0], k4.families[0])
        with pytest.raises(J.SpanDeficient):
            J.jor_table(k4.triple, fams, range(-1, 2))


@st.composite
def plus2(draw, setup):
    out = setup.alg.elem()
    for fam in setup.families:
        for n in draw(st.lists(st.integers(-3, 3), max_size=2)):
            out = out + fam.build(n) * draw(st.integers(-3, 3))
    return out


@pytest.mark.parametrize("name", ["k4_setup", "ck6_setup"])
def test_unit(name):
    setup = getattr(J, name)()

    @settings(max_examples=25)
    @given(plus2(setup))
    def inner(a):
        assert J.jor_product(setup.triple, setup.triple.e, a).terms == a.terms
        assert J.jor_product(setup.triple, a, setup.triple.e).terms == a.terms

    inner()


class TestTables:

    def test_unit_row(self, tables):
        for t in tables:
            for lab in t.labels:
                assert t.entries[(t.labels[0], lab)] == {lab: {(0, 0): 1}}

    def test_zeta2_cell(self, tables):
        assert tables[1].entries[("zeta2", "zeta2")] == {"1": {(0, 1): Q(1, 4), (1, 0): Q(-1, 4)}}

    def test_supercommutative(self, tables, k4, ck6):
        par = _parity(k4, ck6)
        for t in tables:
            assert J.check_supercommutative(t, par).ok

    def test_commutative_parity_breaks(self, tables, k4):
        par = {lab: 0 for lab in tables[1].labels}
        assert not J.check_supercommutative(tables[1], par).ok

    def test_render_and_json(self, tables):
        js = tables[0].to_json()
        assert js["entries"]["1 o S"] == "S(fg)"
        assert "1/2*e'(fg)" in tables[0].render()


class TestCompare:

    def test_identity(self, tables):
        assert J.jor_compare(tables[0], tables[0]).ok

    def test_swapped(self, tables):
        swap = {"1": "1", "e'": "e'", "S": "H", "H": "S"}
        assert not J.jor_compare(tables[0], tables[0], swap).ok

    def test_not_bijection(self, tables):
        with pytest.raises(ValueError):
            J.jor_compare(tables[0], tables[1], {"1": "1", "e'": "1", "S": "zeta2", "H": "zeta2*"})

    def test_signed_correspondence(self, tables):
        assert J.jor_compare(tables[0], tables[1], J.SIGNED_CORRESPONDENCE).ok

    def test_printed_correspondence_mismatches(self, tables):
        rep = J.jor_compare(tables[0], tables[1], J.CORRESPONDENCE)
        assert not rep.ok and len(rep.violations) == 4

    def test_typo_cell_flagged(self, tables):
        rep = J.jor_compare(tables[0], J.printed_ck6_table(), expected_mismatch=J.KNOWN_TYPO)
        assert any(n.startswith("flagged cell S o 1") for n in rep.notes)

    def test_stale_flag(self, tables):
        rep = J.jor_compare(tables[0], tables[0], expected_mismatch=J.KNOWN_TYPO)
        assert not rep.ok

    def test_printed_tables_strict(self, tables):
        assert not J.jor_compare(tables[0], J.printed_ck6_table(), expected_mismatch=J.KNOWN_TYPO).ok
        assert not J.jor_compare(tables[1], J.printed_k4_table()).ok


def test_printed_k4_not_supercommutative():
    par = {"1": 0, "zeta2xi'": 0, "zeta2": 1, "zeta2*": 1}
    assert not J.check_supercommutative(J.printed_k4_table(), par).ok


def test_centralizer_closure():
    assert J.centralizer_closure((-2, 2)).ok


def test_certificate():
    cert = J.jordan_certificate()
    assert cert.isomorphic
    assert set(cert.to_json()["reports"]) == set(cert.reports)
