"""Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic throughout.

Lines are collected in RESULTS and printed in the terminal summary. Criteria that compare
against printed formulas are strict: they fail when the printed object is wrong, and the
line also reports the independently derived route.
"""
import random
from fractions import Fraction

import pytest

from superconf import cohomology as H
from superconf import jordan as J
from superconf import locality as L
from superconf import repmod as R
from superconf.algebras import make_algebra, nabla_check, pfaffian_check, sigma_check
from superconf.classify import coroot_values, cuspidal_predicate, eps1_gram, vanishing_criterion
from superconf.liecore import jacobi_check

Q = Fraction
h = Q(1, 2)
RESULTS = {}

pytestmark = pytest.mark.acceptance


def record(k: int, ok: bool, detail: str):
    line = f"{'PASS' if ok else 'FAIL'} criterion {k:2d}: {detail}"
    RESULTS[k] = line
    print(line)
    return ok


def _count(reps):
    return sum(r.checked for r in reps), sum(len(r.violations) for r in reps)


JACOBI_FAMILIES = ["W:2", "S:2:g=1/3", "K:3", "K:4", "K:5", "Khat:4", "K:3:ns", "CK6", "K2:4"]


def test_c01_jacobi():
    reps = {a: jacobi_check(make_algebra(a), (-3, 3)) for a in JACOBI_FAMILIES}
    bad = [a for a, r in reps.items() if not r.ok]
    n, v = _count(reps.values())
    assert record(1, not bad, f"Jacobi on [-3,3] for {len(reps)} families, {n} triples, {v} violations"
                              + (f" in {bad}" if bad else ""))


def test_c02_extension_identity():
    rep = H.extension_identity_check((-3, 3))
    assert record(2, rep.ok, f"central_extend(K(4), psi) vs Khat(4) on [-3,3]: {rep.checked} pairs, "
                             f"{len(rep.violations)} violations")


COCYCLES = [("psi", "K:4"), ("phi1", "VirH"), ("phi2", "VirH"), ("phi3", "VirH"), ("psi3", "W:2"), ("psi4", "W:1")]


def test_c03_cocycles():
    reps = {cid: H.cocycle_check(cid, make_algebra(a), (-4, 4)) for cid, a in COCYCLES}
    printed = H.d_cocycle_check((-4, 4), H.PRINTED)
    derived = H.d_cocycle_check((-4, 4), H.DERIVED)
    bad = [c for c, r in reps.items() if not r.ok]
    ok = not bad and printed.ok
    detail = (f"6 cocycles on [-4,4] {'ok' if not bad else f'fail {bad}'}; exceptional D as printed: "
              f"{'ok' if printed.ok else f'{len(printed.violations)}+ violations'}; "
              f"derived D: {'ok' if derived.ok else 'fail'} ({derived.checked} checks incl. k-invariance)")
    record(3, ok, detail)
    assert not bad and derived.ok
    assert ok, "exceptional cocycle as printed is not a cocycle"


def test_c04_nabla():
    reps = [nabla_check(make_algebra(a), (-3, 3)) for a in ("K:3", "K:4:D")]
    n, v = _count(reps)
    assert record(4, all(r.ok for r in reps), f"nabla homomorphism K(3), K(4;D) on [-3,3]: {n} pairs, {v} violations")


def test_c05_pfaffian():
    rep = pfaffian_check(n_random=50, seed=0)
    assert record(5, rep.ok, f"phi(s)s = s phi(s) = Pf(s) Id, 6 basis + 50 random: {rep.checked} checks, "
                             f"{len(rep.violations)} violations")


LEMMA_GRID = (-1, 0, 1, 2)


def test_c06_lemmas():
    printed, derived = {}, {}
    for lid, lem in R.CATALOG.items():
        alg = make_algebra(lem.family)
        params = R.random_params(lem.n_lam, 10, seed=6)
        printed[lid] = R.lemma_check(alg, lid, params, LEMMA_GRID, R.PRINTED)
        if lem.derived is not None:
            derived[lid] = R.lemma_check(alg, lid, params, LEMMA_GRID, R.DERIVED)
    bad = [k for k, r in printed.items() if not r.ok]
    n, _ = _count(printed.values())
    fixed = [k for k in bad if k in derived and derived[k].ok]
    ok = not bad
    record(6, ok, f"{len(printed)} identities on 4^5 modes x 10 draws ({n} points): printed "
                  + ("all agree" if ok else f"mismatch in {bad}; derived sign agrees for {fixed}"))
    assert all(r.ok for r in derived.values())
    assert [k for k in bad if k not in fixed] == []
    assert ok, f"printed closed forms disagree with the word oracle: {bad}"


def _rq(rng):
    return Q(rng.randint(-12, 12), rng.randint(1, 7))


# (lambda_c, delta) choices: +-2 lambda_2 or random, and the (b) value, the (c) value or random
KHAT_COMBOS = [("+", "b"), ("-", "c"), ("+", "c"), ("-", "b"), ("r", "b"), ("+", "r"), ("-", "r"),
               ("+", "b"), ("-", "c"), ("r", "c"), ("+", "b"), ("-", "c"), ("r", "r")]


def boundary_grid(seed=7):
    """50 points with lambda(h1) = 1; about half sit on the boundary clauses."""
    rng = random.Random(seed)
    pts = []
    for i in range(13):
        r = _rq(rng)
        pts.append(("W:2", (r + 1, r), -r if i % 2 == 0 else _rq(rng)))
    for i in range(12):
        pts.append(("S:2:g=1/3", (Q(1),), Q(1) if i % 2 == 0 else _rq(rng)))
    for sc, sd in KHAT_COMBOS:
        l2 = rng.choice([h, Q(1), Q(3, 2), Q(2)])
        lc = {"+": 2 * l2, "-": -2 * l2, "r": _rq(rng)}[sc]
        d = {"b": (1 - l2) / 2, "c": (1 + l2) / 2, "r": _rq(rng)}[sd]
        pts.append(("Khat:4", (1 - l2, l2, lc), d))
    for i in range(12):
        pts.append(("K:3", (h,), Q(1, 4) if i % 2 == 0 else _rq(rng)))
    return pts


GRAM_POINTS = [("W:2", (3, 1)), ("W:2", (Q(5, 2), h)), ("S:2:g=1/3", (2,)), ("S:2:g=1/3", (3,)),
               ("Khat:4", (1, 1, Q(2, 3))), ("Khat:4", (h, Q(3, 2), 1)), ("K:3", (1,)), ("K:3", (Q(3, 2),))]


def test_c07_classification():
    pts = boundary_grid()
    assert len(pts) == 50 and all(coroot_values(f, l)[0] == 1 for f, l, _ in pts)
    disagree, on = [], 0
    for fam, lam, d in pts:
        v, p = vanishing_criterion(fam, lam, d), cuspidal_predicate(fam, lam, d)
        on += v
        if v != p.cuspidal:
            disagree.append((fam, lam, d))
    rng = random.Random(17)
    gram_bad = []
    for fam, lam in GRAM_POINTS:
        # generic: denominator 97 keeps (delta, u) off every rank-dropping line with small denominators
        d, u = Q(rng.randint(-500, 500), 97), Q(rng.randint(-500, 500), 97)
        if eps1_gram(fam, lam, d, u) <= 0 or not cuspidal_predicate(fam, lam, d, u).cuspidal:
            gram_bad.append((fam, lam, d, u))
    ok = not disagree and not gram_bad
    assert record(7, ok, f"50 points with lambda(h1)=1: oracle = predicate on all but {len(disagree)} "
                         f"({on} on the boundary); lambda(h1)>=2: {len(GRAM_POINTS) - len(gram_bad)}/"
                         f"{len(GRAM_POINTS)} positive Gram rank and cuspidal"), (disagree, gram_bad)


def test_c08_ck6_module():
    rep = R.ck6_check((-3, 3))
    sums = {s.name: s for s in R.ck6_summands()}
    so4 = {k: sums[k].weight[:2] for k in ("W+", "W-")}
    ok = (rep.ok and sums["W+"].c_value == 1 and sums["W-"].c_value == -1
          and all(w == (1, 0) for w in so4.values()))
    assert record(8, ok, f"CK(6) on t^u W, [-3,3]: {rep.checked} checks, {len(rep.violations)} violations; "
                         f"c = +1 on W+, -1 on W-; so(4) highest weight (1,0) on both; "
                         f"delta {sums['W+'].delta}, {sums['W-'].delta}")


def test_c09_jordan():
    cert = J.jordan_certificate()
    r = cert.reports
    strict = {k: r[k] for k in ("computed CK6 vs printed CK6", "computed K4 vs printed K4",
                                "computed CK6 vs computed K4, printed correspondence")}
    flagged = [n for n in r["computed CK6 vs printed CK6"].notes if n.startswith("flagged cell")]
    ok = all(x.ok for x in strict.values()) and len(flagged) == 1
    detail = ("printed tables: " + ", ".join(f"{k.replace('computed ', '')} {len(v.violations)} mismatches"
                                             for k, v in strict.items())
              + f"; {len(flagged)} typo cell flagged; computed tables isomorphic under H -> -zeta2*: "
              + ("yes" if cert.isomorphic else "no"))
    record(9, ok, detail)
    assert cert.isomorphic
    assert r["supercommutative CK6"].ok and r["supercommutative K4"].ok
    assert ok, "printed Jordan tables do not match the computed ones"


def test_c10_locality():
    reps = {a: L.generator_report(a, (-8, 8), 4) for a in ("K:4", "Khat:4", "K2:4")}
    n, v = _count(reps.values())
    assert record(10, all(r.ok for r in reps.values()),
                  f"generator pairs on [-8,8], order <= 4: K(4) (omega family in K(4;D)), Khat(4) local; "
                  f"K2(4) semi-local; {n} pairs, {v} violations")


def test_c11_maurer_cartan():
    jac, rel = L.mc_jacobi(6), L.mc_relations(6)
    assert record(11, jac.ok and rel.ok, f"Jacobi for |n|,|m|,|k| <= 6 ({jac.checked} triples), "
                                         f"[a_-1, Delta(n)] = n Delta(n) and Delta(n) in [G,G] for n <= 6 "
                                         f"({rel.checked} checks)")


def test_c12_sigma():
    reps = {a: sigma_check(make_algebra(a), (-3, 3)) for a in ("K:4", "K:6", "Khat:4")}
    n, v = _count(reps.values())
    assert record(12, all(r.ok for r in reps.values()),
                  f"sigma involutive automorphism of K(4), K(6), Khat(4) (c lift -1) on [-3,3]: "
                  f"{n} checks, {v} violations")
