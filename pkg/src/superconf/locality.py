"""Mode distributions: windowed locality and semi-locality, and the Maurer-Cartan algebra."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .algebras import make_algebra
from .liecore import AlgebraDef, Elem, Report, _acc
from .scalar import rat


class WindowTooSmall(ValueError):
    pass


class ModeRule(str, enum.Enum):
    Ramond = "Ramond"          # n in Z
    NSOdd = "NS-odd"           # n in 1/2 + Z
    TwistedEven = "Twisted-even"  # n in 2Z
    TwistedOdd = "Twisted-odd"    # n in 2Z + 1

    def legal(self, n: Fraction) -> bool:
        if self is ModeRule.NSOdd:
            return n.denominator == 2
        if n.denominator != 1:
            return False
        if self is ModeRule.TwistedEven:
            return n.numerator % 2 == 0
        if self is ModeRule.TwistedOdd:
            return n.numerator % 2 == 1
        return True

    @property
    def step(self) -> int:
        return 2 if self in (ModeRule.TwistedEven, ModeRule.TwistedOdd) else 1

    @property
    def offset(self) -> Fraction:
        return {ModeRule.NSOdd: Fraction(1, 2), ModeRule.TwistedOdd: Fraction(1)}.get(self, Fraction(0))


@dataclass
class ModeFamily:
    """a(z) = sum over legal n of a(t^n) z^n for a root symbol of L_0."""
    alg: AlgebraDef
    root: str
    rule: ModeRule = ModeRule.Ramond
    skip_illegal: bool = True

    def at(self, n: Fraction) -> Optional[Elem]:
        """a(t^n), or None when the mode is outside the rule or the algebra."""
        if not self.rule.legal(n):
            return None
        try:
            return self.alg.parse_name(self.root, n)
        except ValueError:
            if self.skip_illegal:
                return None
            raise

    def modes(self, lo, hi) -> List[Fraction]:
        lo, hi = rat(lo), rat(hi)
        out = []
        n = self.rule.offset + self.rule.step * ((lo - self.rule.offset) // self.rule.step)
        while n <= hi:
            if n >= lo:
                out.append(n)
            n += self.rule.step
        return out


def auto_rule(alg: AlgebraDef, root: str) -> ModeRule:
    """First rule whose representative mode parses."""
    for rule, n in ((ModeRule.Ramond, Fraction(0)), (ModeRule.NSOdd, Fraction(1, 2)),
                    (ModeRule.TwistedOdd, Fraction(1))):
        try:
            alg.parse_name(root, n)
        except ValueError:
            continue
        if rule is ModeRule.Ramond:
            try:
                alg.parse_name(root, Fraction(1))
            except ValueError:
                return ModeRule.TwistedEven
        return rule
    raise ValueError(f"{root!r} has no legal modes in {alg.name}")


def family(alg: AlgebraDef, root: str, rule: Optional[ModeRule] = None) -> ModeFamily:
    return ModeFamily(alg, root, rule or auto_rule(alg, root))


def _mult_poly(N: int, power: int) -> Dict[Tuple[int, int], int]:
    """(z1^power - z2^power)^N as {(i, j): c}."""
    return {(power * (N - k), power * k): comb(N, k) * (-1) ** k for k in range(N + 1)}


def _bracket(alg: AlgebraDef, x: Elem, y: Elem) -> Dict:
    out: Dict = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            for k, c in alg.bracket_keys(a, b):
                _acc(out, k, c * ca * cb)
    return out


class _Table:
    def __init__(self, a: ModeFamily, b: ModeFamily):
        self.a, self.b = a, b
        self._e: Dict = {}
        self._br: Dict = {}

    def elem(self, fam: ModeFamily, n: Fraction):
        key = (id(fam), n)
        if key not in self._e:
            self._e[key] = fam.at(n)
        return self._e[key]

    def br(self, n: Fraction, m: Fraction) -> Dict:
        r = self._br.get((n, m))
        if r is None:
            x, y = self.elem(self.a, n), self.elem(self.b, m)
            r = _bracket(self.a.alg, x, y) if (x is not None and y is not None) else {}
            self._br[(n, m)] = r
        return r


def _kills(tab: _Table, N: int, power: int, window) -> Tuple[bool, int]:
    lo, hi = rat(window[0]), rat(window[1])
    P = _mult_poly(N, power)
    span = power * N
    checked = 0
    # coefficient of z1^p z2^q needs modes (p - i, q - j); both ends must stay inside the window
    for n0 in tab.a.modes(lo, hi - span):
        for m0 in tab.b.modes(lo, hi - span):
            p, q = n0 + span, m0 + span
            out: Dict = {}
            for (i, j), c in P.items():
                for k, v in tab.br(p - i, q - j).items():
                    _acc(out, k, c * v)
            checked += 1
            if out:
                return False, checked
    return True, checked


def _order(a: ModeFamily, b: ModeFamily, window, maxN: int, power: int) -> Optional[int]:
    lo, hi = rat(window[0]), rat(window[1])
    if hi - lo < power * maxN + 2:
        raise WindowTooSmall(f"window {window} too small for order {maxN}")
    if a.alg is not b.alg:
        raise ValueError("distributions live in different algebras")
    tab = _Table(a, b)
    for N in range(maxN + 1):
        ok, checked = _kills(tab, N, power, window)
        if ok and checked:
            return N
    return None


def locality_order(a: ModeFamily, b: ModeFamily, window=(-8, 8), maxN: int = 6) -> Optional[int]:
    """Least N <= maxN with (z1 - z2)^N [a(z1), b(z2)] = 0 on every coefficient inside the window."""
    return _order(a, b, window, maxN, 1)


def semilocality_order(a: ModeFamily, b: ModeFamily, window=(-8, 8), maxM: int = 6) -> Optional[int]:
    """Least M <= maxM with (z1^2 - z2^2)^M [a(z1), b(z2)] = 0 inside the window."""
    return _order(a, b, window, maxM, 2)


def locality_report(alg: AlgebraDef, roots: Sequence[str], window=(-8, 8), maxN: int = 4,
                    semi: bool = False) -> Report:
    """Order of every pair of root families; a violation is a pair with no order <= maxN.

    Windowed: each coefficient is a finite binomial sum of structure constants, checked
    only where all its modes lie inside the window.
    """
    rep = Report(("semi-" if semi else "") + f"locality of {alg.name}")
    fams = [family(alg, r) for r in roots]
    orders = {}
    for fa, fb in itertools.combinations_with_replacement(fams, 2):
        fn = semilocality_order if semi else locality_order
        N = fn(fa, fb, window, maxN)
        rep.checked += 1
        orders[(fa.root, fb.root)] = N
        if N is None:
            rep.add(a=fa.root, b=fb.root, order=f"> {maxN}")
    hist: Dict = {}
    for N in orders.values():
        hist[N] = hist.get(N, 0) + 1
    rep.notes.append("order histogram " + ", ".join(f"{k}: {v}" for k, v in sorted(hist.items(), key=str)))
    rep.notes.append("windowed check: each coefficient is verified where all its modes lie in the window")
    return rep


# ---------------------------------------------------------------- Maurer-Cartan algebra

McElement = Dict[int, Fraction]


def mc(*pairs) -> McElement:
    out: McElement = {}
    for n, c in pairs:
        _acc(out, int(n), rat(c))
    return out


def mc_bracket(x: McElement, y: McElement) -> McElement:
    """[a_n, a_m] = (n - m) a_{n+m} - n a_n + m a_m, extended bilinearly."""
    out: McElement = {}
    for n, cx in x.items():
        for m, cy in y.items():
            c = cx * cy
            _acc(out, n + m, (n - m) * c)
            _acc(out, n, -n * c)
            _acc(out, m, m * c)
    return out


def mc_delta(n: int) -> McElement:
    """Delta(n) = sum_{k=-1}^{|n|} (-1)^k C(|n|+1, k+1) a_{sign(n) k}, n != 0."""
    if n == 0:
        raise ValueError("Delta(0) is not defined")
    s, k0 = (1 if n > 0 else -1), abs(n)
    out: McElement = {}
    for k in range(-1, k0 + 1):
        _acc(out, s * k, Fraction((-1) ** (k % 2) * comb(k0 + 1, k + 1)))
    return out


def mc_derived_test(x: McElement) -> bool:
    """Membership in [G, G]: sum x_k = 0 and sum k x_k = 0."""
    return sum(x.values(), Fraction(0)) == 0 and sum((k * c for k, c in x.items()), Fraction(0)) == 0


def mc_scale(x: McElement, c) -> McElement:
    c = rat(c)
    return {k: v * c for k, v in x.items()} if c else {}


def mc_jacobi(bound: int = 6) -> Report:
    rep = Report("Maurer-Cartan Jacobi")
    idx = range(-bound, bound + 1)
    for n, m, k in itertools.product(idx, repeat=3):
        x, y, z = {n: Fraction(1)}, {m: Fraction(1)}, {k: Fraction(1)}
        tot: McElement = {}
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            for kk, v in mc_bracket(a, mc_bracket(b, c)).items():
                _acc(tot, kk, v)
        rep.checked += 1
        if tot:
            rep.add(n=n, m=m, k=k, residual={str(a): str(b) for a, b in tot.items()})
    return rep


def mc_relations(bound: int = 6) -> Report:
    """[a_{-1}, Delta(n)] = n Delta(n), [a_1, Delta(-n)] = -n Delta(-n), Delta(+-n) in [G, G]."""
    rep = Report("Maurer-Cartan relations")
    for n in range(1, bound + 1):
        for sgn, gen in ((1, -1), (-1, 1)):
            d = mc_delta(sgn * n)
            lhs = mc_bracket({gen: Fraction(1)}, d)
            rep.checked += 2
            if lhs != mc_scale(d, sgn * n):
                rep.add(relation=f"[a_{gen}, Delta({sgn * n})]", got=str(lhs))
            if not mc_derived_test(d):
                rep.add(relation=f"Delta({sgn * n}) in [G,G]")
    return rep


# ---------------------------------------------------------------- generator families

@dataclass(frozen=True)
class GeneratorSet:
    alg_id: str
    roots: Tuple[str, ...]
    semi: bool = False
    note: str = ""


_K4_ROOTS = ("1", "zeta1", "zeta2", "eta1", "eta2", "zeta1zeta2", "zeta1eta1", "zeta1eta2",
             "zeta2eta1", "zeta2eta2", "eta1eta2", "zeta1zeta2eta1", "zeta1zeta2eta2",
             "zeta1eta1eta2", "zeta2eta1eta2", "zeta1zeta2eta1eta2")


def generator_set(alg_id: str) -> GeneratorSet:
    """Generator families: one distribution per Grassmann monomial (or vector field) of L_0."""
    if alg_id in ("K:4", "K:4:D"):
        return GeneratorSet("K:4:D", _K4_ROOTS, note=(
            "omega(t^0) is missing from the derived K(4), so the omega family is taken in K(4;D); "
            "every other family and every bracket lies in K(4)"))
    if alg_id == "Khat:4":
        return GeneratorSet(alg_id, _K4_ROOTS[:-1] + ("c",))
    if alg_id.startswith("W:"):
        n = int(alg_id.split(":")[1])
        monos = ["".join(f"xi{i + 1}" for i in range(n) if s >> i & 1) for s in range(1 << n)]
        vf = ["D"] + [f"d{i + 1}" for i in range(n)]
        return GeneratorSet(alg_id, tuple(m + v for m in monos for v in vf))
    if alg_id == "K2:4":
        rest = ("", "zeta2", "eta2", "zeta2eta2")
        roots = tuple((p + x) or "1" for x in rest for p in ("", "s1", "a1", "zeta1eta1"))
        return GeneratorSet(alg_id, roots, semi=True)
    raise KeyError(f"no generator set for {alg_id}")


def generator_report(alg_id: str, window=(-8, 8), maxN: int = 4) -> Report:
    gs = generator_set(alg_id)
    rep = locality_report(make_algebra(gs.alg_id), gs.roots, window, maxN, gs.semi)
    if gs.note:
        rep.notes.append(gs.note)
    return rep
