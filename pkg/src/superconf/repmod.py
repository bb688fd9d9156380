"""Tensor-density modules, highest-weight word evaluation and the CK(6) defining module."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .algebras import (C_MASK, CK6_H, CK6Alg, Func, KAlg, KHat4, Mat, NotMember, SAlg, WAlg, apply_field,
                       ck6_membership, contact_field, fD, fmul)
from .grassmann import SPLIT
from .liecore import AlgebraDef, Elem, Key, Report, _acc, supercomm_sign
from .scalar import MultiPoly, rank, rat

Number = Union[int, Fraction]


class OutOfSubalgebra(ValueError):
    """Element is not in the centralizer frame C_L(F)."""


class WeightImbalance(ValueError):
    pass


class NonHomogeneousFactor(ValueError):
    pass


class UnknownLemma(KeyError):
    pass


# ---------------------------------------------------------------- tensor densities

@dataclass(frozen=True)
class TensParams:
    """(lambda, delta, u); lambda in the coordinates of the family's Cartan basis."""
    lam: Tuple[Fraction, ...]
    delta: Fraction = Fraction(0)
    u: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(rat(x) for x in self.lam))
        object.__setattr__(self, "delta", rat(self.delta))
        object.__setattr__(self, "u", rat(self.u))

    def to_json(self) -> dict:
        return {"lambda": [str(x) for x in self.lam], "delta": str(self.delta), "u": str(self.u)}


TKey = Tuple[int, bool]  # (t2, xi_flag)


@dataclass
class TensVector:
    """Element of Tens: sum c * xi^flag t^(t2/2)."""
    terms: Dict[TKey, Fraction] = field(default_factory=dict)

    @classmethod
    def mono(cls, tpow, xi: bool = False, c=1) -> "TensVector":
        return cls({(int(2 * rat(tpow)), bool(xi)): rat(c)})

    def to_func(self) -> Func:
        return {(int(x), t2): c for (t2, x), c in self.terms.items()}

    @classmethod
    def from_func(cls, f: Func) -> "TensVector":
        if any(m not in (0, 1) for m, _ in f):
            raise OutOfSubalgebra("vector leaves C[t, xi]")
        return cls({(t2, bool(m)): c for (m, t2), c in f.items() if c})

    def coeff(self, tpow, xi: bool = False) -> Fraction:
        return self.terms.get((int(2 * rat(tpow)), bool(xi)), Fraction(0))

    def __add__(self, o: "TensVector") -> "TensVector":
        out = dict(self.terms)
        for k, c in o.terms.items():
            _acc(out, k, c)
        return TensVector(out)

    def scale(self, c) -> "TensVector":
        c = rat(c)
        return TensVector({k: v * c for k, v in self.terms.items()} if c else {})

    def __eq__(self, o) -> bool:
        return isinstance(o, TensVector) and self.terms == o.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{'xi' if x else ''}t^{Fraction(t2, 2)}" for (t2, x), c in sorted(self.terms.items()))

    def to_json(self) -> list:
        return [{"tpow": str(Fraction(t2, 2)), "xi": x, "coeff": str(c)} for (t2, x), c in sorted(self.terms.items())]


VIR = "vir"
# A local element of g(H) or G(H): component (VIR or Cartan index) -> function in C[t, xi]
Local = Dict[Union[str, int], Func]


def tens_act(ctx: str, g: Local, v: TensVector, p: TensParams) -> TensVector:
    """Action on Tens(lambda, delta, u).

    ctx "g": Vir x H[t], (fD) g = fD(g) + delta D(f) g + u f g, (h f) g = lambda(h) f g.
    ctx "G": K(1) x H[t, xi], nabla(G) + delta D(G) + u <dt/t | nabla(G)>, (h G) F = lambda(h) G F.
    """
    if ctx not in ("g", "G"):
        raise ValueError(f"unknown context {ctx!r}")
    F = v.to_func()
    out: Func = {}
    for comp, G in g.items():
        if ctx == "g" and any(m for m, _ in G):
            raise OutOfSubalgebra("xi-dependent element in Vir x H[t]")
        if comp == VIR:
            X = contact_field(G, 1, SPLIT)
            for k, c in apply_field(X, F).items():
                _acc(out, k, c)
            for k, c in fmul(fD(G), F).items():
                _acc(out, k, p.delta * c)
            for k, c in fmul(X.get(-1, {}), F).items():
                _acc(out, k, p.u * c)
        else:
            if not 0 <= comp < len(p.lam):
                raise OutOfSubalgebra(f"Cartan index {comp} outside lambda")
            lam = p.lam[comp]
            if lam:
                for k, c in fmul(G, F).items():
                    _acc(out, k, lam * c)
    return TensVector.from_func(out)


# ---------------------------------------------------------------- frames C_L(F) -> g(H), G(H)

class Frame:
    """Identification of C_L(F) / Rad with g(H) or G(H) for one family."""

    ctx = "g"

    def __init__(self, alg: AlgebraDef):
        self.alg = alg

    @property
    def work(self) -> AlgebraDef:
        """Algebra in which words are straightened."""
        return self.alg

    def lift(self, x: Elem) -> Elem:
        return x

    def params(self, p: TensParams) -> TensParams:
        return p

    def local(self, k: Key) -> Optional[Local]:
        """Local element of a weight-zero key, None on the radical."""
        raise NotImplementedError

    def check(self, k: Key):
        if self.work.fdeg(k) != 0:
            raise OutOfSubalgebra(f"{self.work.key_str(k)} is not in C_L(F)")


def _t(t2: int, m: int = 0) -> Func:
    return {(m, t2): Fraction(1)}


class WFrame(Frame):
    def local(self, k):
        self.check(k)
        m, t2, s = k
        if s == -1 and m == 0:
            return {VIR: _t(t2)}
        if s >= 0 and m == 1 << s:
            return {s: _t(t2)}
        raise OutOfSubalgebra(self.alg.key_str(k))


class SFrame(WFrame):
    """S(n;gamma) evaluated in the ambient W(n)-module with lambda~_1 = 0."""

    @property
    def work(self):
        return self.alg.ambient

    def lift(self, x: Elem) -> Elem:
        return self.alg.embed(x) if x.alg is self.alg else x

    def params(self, p: TensParams) -> TensParams:
        lt = [Fraction(0)]
        for a in p.lam:
            lt.append(lt[-1] - a)
        if len(lt) != self.alg.n:
            raise ValueError(f"S({self.alg.n}) takes {self.alg.n - 1} weights, got {len(p.lam)}")
        return TensParams(tuple(lt), p.delta, p.u)


class KFrame(Frame):
    """K(N), K_NS(N), K(4;D) in the split basis."""

    def __init__(self, alg: KAlg):
        super().__init__(alg)
        if alg.kind != SPLIT:
            raise OutOfSubalgebra("highest-weight frames need the split basis")
        self.m = alg.N // 2
        self.odd = alg.N % 2 == 1
        self.ctx = "G" if self.odd else "g"
        self.xi = 1 << (alg.N - 1) if self.odd else 0

    def local(self, k):
        self.check(k)
        m, t2 = k
        x = 1 if (self.odd and m & self.xi) else 0
        core = m & ~self.xi
        if core == 0:
            return {VIR: _t(t2, x)}
        pairs = [i for i in range(self.m) if (core >> (2 * i)) & 3 == 3]
        if len(pairs) == 1 and core == 3 << (2 * pairs[0]):
            return {pairs[0]: _t(t2, x)}
        return None


class KHatFrame(Frame):
    def local(self, k):
        self.check(k)
        m, t2 = k
        comp = {0: VIR, 3: 0, 12: 1, C_MASK: 2}.get(m)
        if comp is None:
            raise OutOfSubalgebra(self.alg.key_str(k))
        return {comp: _t(t2)}


class CK6Frame(Frame):
    def local(self, k):
        self.check(k)
        if k[0] == "vir":
            return {VIR: _t(k[-1])}
        if k[0] == "h":
            return {k[1]: _t(k[-1])}
        raise OutOfSubalgebra(self.alg.key_str(k))


def frame_for(alg: AlgebraDef) -> Frame:
    if isinstance(alg, SAlg):
        return SFrame(alg)
    if isinstance(alg, WAlg):
        return WFrame(alg)
    if isinstance(alg, KHat4):
        if alg.kind != SPLIT:
            raise OutOfSubalgebra("highest-weight frames need the split basis")
        return KHatFrame(alg)
    if isinstance(alg, KAlg):
        return KFrame(alg)
    if isinstance(alg, CK6Alg):
        return CK6Frame(alg)
    raise OutOfSubalgebra(f"no highest-weight frame for {alg.name}")


def frame_act(frame: Frame, x: Elem, v: TensVector, p: TensParams) -> TensVector:
    """Action of a weight-zero element of the family on the highest component."""
    x = frame.lift(x)
    q = frame.params(p)
    out = TensVector()
    for k, c in x.terms.items():
        loc = frame.local(k)
        if loc is not None:
            out = out + tens_act(frame.ctx, loc, v, q).scale(c)
    return out


# ---------------------------------------------------------------- words on highest-weight vectors

@dataclass
class ModeWord:
    """factors[0] ... factors[-1] v(t^hw_mode); the rightmost factor acts first."""
    factors: List[Elem]
    hw_mode: Fraction = Fraction(0)
    hw_xi: bool = False

    def __post_init__(self):
        self.hw_mode = rat(self.hw_mode)
        for x in self.factors:
            try:
                x.weight()
                x.fdeg()
                x.parity()
            except ValueError as e:
                raise NonHomogeneousFactor(str(e))


KWord = Tuple[Key, ...]
Straightened = Dict[KWord, Fraction]


class Straightener:
    """PBW straightening against a highest-weight vector, cached per key word."""

    def __init__(self, frame: Frame, strategy: int = 1):
        if strategy not in (1, 2):
            raise ValueError("strategy is 1 (raise right) or 2 (lower left)")
        self.frame = frame
        self.alg = frame.work
        self.strategy = strategy
        self._memo: Dict[KWord, Straightened] = {}

    def _swap(self, w: KWord, j: int) -> Straightened:
        """w = ... a b ... (a at j) -> ... [a,b] ... + sign ... b a ..."""
        a, b = w[j], w[j + 1]
        out: Straightened = {}
        for k, c in self.alg.bracket_keys(a, b):
            for kk, cc in self.reduce(w[:j] + (k,) + w[j + 2:]).items():
                _acc(out, kk, c * cc)
        s = supercomm_sign(self.alg.parity(a), self.alg.parity(b))
        for kk, cc in self.reduce(w[:j] + (b, a) + w[j + 2:]).items():
            _acc(out, kk, s * cc)
        return out

    def reduce(self, w: KWord) -> Straightened:
        """Weight-zero key word -> combination of words in C_L(F) \\ Rad, equal on v."""
        r = self._memo.get(w)
        if r is not None:
            return r
        fd = [self.alg.fdeg(k) for k in w]
        if self.strategy == 1:
            pos = [i for i, f in enumerate(fd) if f > 0]
            if not pos:
                r = self._flat(w, fd)
            elif pos[-1] == len(w) - 1:
                r = {}
            else:
                r = self._swap(w, pos[-1])
        else:
            neg = [i for i, f in enumerate(fd) if f < 0]
            if not neg:
                r = self._flat(w, fd)
            elif neg[0] == 0:
                r = {}
            else:
                r = self._swap(w, neg[0] - 1)
        self._memo[w] = r
        return r

    def _flat(self, w: KWord, fd) -> Straightened:
        if any(fd):
            raise WeightImbalance("word is not F-balanced")
        if any(self.frame.local(k) is None for k in w):
            return {}
        return {w: Fraction(1)}


def _expand(factors: Sequence[Elem]) -> Straightened:
    out: Straightened = {(): Fraction(1)}
    for x in factors:
        nxt: Straightened = {}
        for w, c in out.items():
            for k, d in x.terms.items():
                _acc(nxt, w + (k,), c * d)
        out = nxt
    return out


_STRAIGHTENERS: Dict[Tuple[int, int], Straightener] = {}


def straightener(alg: AlgebraDef, strategy: int = 1) -> Straightener:
    key = (id(alg), strategy)
    s = _STRAIGHTENERS.get(key)
    if s is None or s.frame.alg is not alg:
        s = Straightener(frame_for(alg), strategy)
        _STRAIGHTENERS[key] = s
    return s


def act_on_highest_weight(alg: AlgebraDef, w: ModeWord, p: TensParams, strategy: int = 1) -> TensVector:
    """Evaluate a weight-zero word on the highest component V^(lambda) = Tens(lambda, delta, u)."""
    st = straightener(alg, strategy)
    fr = st.frame
    factors = [fr.lift(x) for x in w.factors]
    total = [Fraction(0)] * st.alg.n_weights
    for x in factors:
        for i, c in enumerate(x.weight()):
            total[i] += c
    if any(total) or sum((x.fdeg() for x in factors), Fraction(0)):
        raise WeightImbalance(f"net weight {tuple(total)} != 0")
    if fr.ctx == "g" and w.hw_xi:
        raise OutOfSubalgebra("xi v only exists for G(H)-frames")
    q = fr.params(p)
    v0 = TensVector.mono(w.hw_mode, w.hw_xi)
    out = TensVector()
    cache: Dict[KWord, TensVector] = {}
    for kw, c in _expand(factors).items():
        for flat, d in st.reduce(kw).items():
            r = cache.get(flat)
            if r is None:
                r = v0
                for k in reversed(flat):
                    r = tens_act(fr.ctx, fr.local(k), r, q)
                    if not r:
                        break
                cache[flat] = r
            out = out + r.scale(c * d)
    return out


def word_parity(w: ModeWord) -> int:
    return sum(x.parity() for x in w.factors) % 2


# ---------------------------------------------------------------- identity lemma catalog

MODE_VARS = ("nv", "nw", "nx", "ny", "nz")


@dataclass(frozen=True)
class Lemma:
    lemma_id: str
    family: str
    factors: Tuple[str, str, str, str]
    closed: Callable[[TensParams], MultiPoly]
    hw_xi: bool = False
    n_lam: int = 1
    derived: Optional[Callable[[TensParams], MultiPoly]] = None


def _P(c) -> MultiPoly:
    return MultiPoly.const(MODE_VARS, c)


def _V(name: str) -> MultiPoly:
    return MultiPoly.var(MODE_VARS, name)


def _dd(a: str, b: str) -> MultiPoly:
    return _V(a) - _V(b)


def _quad(c) -> MultiPoly:
    return _dd("nv", "nw") * _dd("nx", "ny") * _P(c)


H = Fraction(1, 2)


def _w_a(p):
    d, l1 = p.delta, p.lam[0]
    return _quad(d * (1 - d - l1))


def _w_b(p):
    d, l1, lk = p.delta, p.lam[0], p.lam[1]
    return _dd("nx", "ny") * _P(lk * (l1 + d - 1))


def _w_a_derived(p):
    d, l1 = p.delta, p.lam[0]
    return _quad(d * (d + l1 - 1))


def _s(p):
    d, h1 = p.delta, p.lam[0]
    return _quad((d - h1) * (1 - d))


def _s_derived(p):
    d, h1 = p.delta, p.lam[0]
    return _quad((d - h1) * (d - 1))


def _k4(which):
    def f(p):
        l1, l2, lc = p.lam
        d = p.delta
        if which == "a":
            return _quad((d - 1 + l1 / 2) * (d - l1 / 2))
        if which == "b":
            return _dd("ny", "nx") * _P((l2 - lc / 2) * (d - 1 + l1 / 2))
        if which == "d":
            return _dd("nw", "nv") * _P((d - l1 / 2) * (l2 + lc / 2))
        if which == "e":
            return _P((l2 + lc / 2) * (l2 - lc / 2))
        return _P(0)
    return f


def _k3(xi):
    def f(p):
        l1, d = p.lam[0], p.delta
        if xi:
            return _quad((d + (l1 - 1) / 2) * (d - (l1 - 1) / 2))
        return _quad((d - 1 + l1 / 2) * (d - l1 / 2))
    return f


_Z, _E = "zeta1", "eta1"
_ZS, _ES = "zeta1zeta2eta2", "eta1zeta2eta2"

CATALOG: Dict[str, Lemma] = {
    "formulaW.a": Lemma("formulaW.a", "W:2", ("xi1D", "xi1D", "d1", "d1"), _w_a, n_lam=2,
                        derived=_w_a_derived),
    "formulaW.b": Lemma("formulaW.b", "W:2", ("xi1xi2d2", "xi1D", "d1", "d1"), _w_b, n_lam=2),
    "formulaW.c": Lemma("formulaW.c", "W:2", ("xi1xi2d2", "xi1xi2d2", "d1", "d1"), lambda p: _P(0), n_lam=2),
    "formulaS": Lemma("formulaS", "S:2:g=1/3", ("A", "A", "d1", "d1"), _s, n_lam=1, derived=_s_derived),
}
for _lab, _f in zip("abcdefghk", [(_Z, _Z, _E, _E), (_Z, _ZS, _E, _E), (_ZS, _ZS, _E, _E),
                                   (_Z, _Z, _E, _ES), (_Z, _ZS, _E, _ES), (_ZS, _ZS, _E, _ES),
                                   (_Z, _Z, _ES, _ES), (_Z, _ZS, _ES, _ES), (_ZS, _ZS, _ES, _ES)]):
    CATALOG[f"formulasK4.{_lab}"] = Lemma(f"formulasK4.{_lab}", "Khat:4", _f, _k4(_lab), n_lam=3)
CATALOG["formulasK3.a"] = Lemma("formulasK3.a", "K:3", (_Z, _Z, _E, _E), _k3(False), n_lam=1)
CATALOG["formulasK3.b"] = Lemma("formulasK3.b", "K:3", (_Z, _Z, _E, _E), _k3(True), hw_xi=True, n_lam=1)


def get_lemma(lemma_id: str) -> Lemma:
    try:
        return CATALOG[lemma_id]
    except KeyError:
        raise UnknownLemma(lemma_id)


PRINTED, DERIVED = "printed", "derived"


def closed_form(lemma_id: str, p: TensParams, normalization: str = PRINTED) -> MultiPoly:
    """Closed form as a polynomial in the modes (nv, nw, nx, ny, nz).

    PRINTED is the catalogued statement; DERIVED differs only where the catalogued
    sign disagrees with the expansion A + B - C of its own intermediate terms.
    """
    lem = get_lemma(lemma_id)
    if normalization == DERIVED and lem.derived is not None:
        return lem.derived(p)
    if normalization not in (PRINTED, DERIVED):
        raise ValueError(f"unknown normalization {normalization!r}")
    return lem.closed(p)


def lemma_word(alg: AlgebraDef, lemma_id: str, modes: Sequence[Number]) -> ModeWord:
    """Word of a catalogued lemma at modes (n1, n2, n3, n4, n0)."""
    lem = get_lemma(lemma_id)
    *ms, n0 = [rat(x) for x in modes]
    return ModeWord([alg.parse_name(nm, m) for nm, m in zip(lem.factors, ms)], n0, lem.hw_xi)


def lemma_value(alg: AlgebraDef, lemma_id: str, modes: Sequence[Number], p: TensParams,
                strategy: int = 1) -> Fraction:
    """Coefficient of (xi^e) t^{sum modes} in word * v, the scalar the closed form predicts."""
    w = lemma_word(alg, lemma_id, modes)
    r = act_on_highest_weight(alg, w, p, strategy)
    total = sum((rat(x) for x in modes), Fraction(0))
    extra = {k for k in r.terms if k != (int(2 * total), w.hw_xi)}
    if extra:
        raise WeightImbalance(f"unexpected output components {sorted(extra)}")
    return r.coeff(total, w.hw_xi)


def lemma_check(alg: AlgebraDef, lemma_id: str, params: Iterable[TensParams],
                grid: Sequence[Number] = (-1, 0, 1, 2), normalization: str = PRINTED) -> Report:
    """Oracle vs closed form on grid^5 for each parameter point."""
    rep = Report(f"lemma {lemma_id} ({normalization}) on {alg.name}")
    for p in params:
        P = closed_form(lemma_id, p, normalization)
        for modes in itertools.product(grid, repeat=5):
            got = lemma_value(alg, lemma_id, modes, p)
            want = P.evaluate([rat(m) for m in modes])
            rep.checked += 1
            if got != want:
                rep.add(params=p.to_json(), modes=[str(m) for m in modes], oracle=got, closed=want)
    return rep


# ---------------------------------------------------------------- Gram ranks

Template = Sequence[str]


def instantiate(alg: AlgebraDef, templates: Iterable[Template], modes: Sequence[Number]) -> List[List[Elem]]:
    """All words obtained from name templates by assigning modes; illegal modes are skipped."""
    out = []
    for tpl in templates:
        for ms in itertools.product(modes, repeat=len(tpl)):
            try:
                out.append([alg.parse_name(nm, m) for nm, m in zip(tpl, ms)])
            except ValueError:
                continue
    return out


def gram_rank(alg: AlgebraDef, p: TensParams, raise_words: Sequence[Sequence[Elem]],
              lower_words: Sequence[Sequence[Elem]], hw_mode: Number = 0, hw_xi: bool = False) -> int:
    """Rank of <raise | lower> on v(t^hw_mode), summed over t-degree blocks of the lower words."""
    if not raise_words or not lower_words:
        return 0
    groups: Dict[Fraction, List[Sequence[Elem]]] = {}
    for lw in lower_words:
        groups.setdefault(sum((x.tdeg() for x in lw), Fraction(0)), []).append(lw)
    total = 0
    for deg, lws in sorted(groups.items()):
        rows: Dict[Tuple[int, TKey], List[Fraction]] = {}
        for j, lw in enumerate(lws):
            for i, rw in enumerate(raise_words):
                r = act_on_highest_weight(alg, ModeWord(list(rw) + list(lw), hw_mode, hw_xi), p)
                for k, c in r.terms.items():
                    rows.setdefault((i, k), [Fraction(0)] * len(lws))[j] = c
        if rows:
            total += rank(list(rows.values()))
    return total


def eps1_block(alg: AlgebraDef, window: Tuple[Number, Number]) -> Tuple[List[List[Elem]], List[List[Elem]]]:
    """(eps_1)^2 raising words and (-eps_1)^2 lowering words of Khat(4) or K(2m+1) with modes in window."""
    lo, hi = int(rat(window[0])), int(rat(window[1]))
    modes = list(range(lo, hi + 1))
    if isinstance(alg, KHat4):
        ups, downs = (_Z, _ZS), (_E, _ES)
    elif isinstance(alg, KAlg) and alg.N == 3:
        ups, downs = (_Z,), (_E,)
    else:
        raise OutOfSubalgebra(f"no eps_1 block for {alg.name}")
    raise_t = list(itertools.product(ups, repeat=2))
    lower_t = list(itertools.product(downs, repeat=2))
    return instantiate(alg, raise_t, modes), instantiate(alg, lower_t, modes)


# ---------------------------------------------------------------- CK(6) defining module t^u W

CKVector = Dict[Tuple[int, int], Fraction]  # (component 0..7, t2) -> coeff; 0..3 = x_i, 4..7 = d_i

W_PLUS = (0, 1, 6, 7)   # x1, x2, d3, d4
W_MINUS = (2, 3, 4, 5)  # x3, x4, d1, d2
COMPONENT_NAMES = ("x1", "x2", "x3", "x4", "d1", "d2", "d3", "d4")


def ck6_defining_act(x: Union[Elem, Mat], w: CKVector, u=0, alg: Optional[CK6Alg] = None) -> CKVector:
    """Matrix of order <= 1 differential operators on t^u (V + V*)[t, 1/t]."""
    u = rat(u)
    if isinstance(x, Elem):
        alg = x.alg
        M = alg.elem_matrix(x)
    else:
        if not ck6_membership(x, alg):
            raise NotMember("matrix is not in CK(6)")
        M = x
    return _mat_act(M, w, u)


def _mat_act(M: Mat, w: CKVector, u: Fraction) -> CKVector:
    out: CKVector = {}
    for (i, j), s in M.items():
        for (jj, m2), c in w.items():
            if jj != j:
                continue
            mu = Fraction(m2, 2) + u
            for (a2, pw), e in s.items():
                v = e * c * mu ** pw
                if v:
                    _acc(out, (i, a2 + m2), v)
    return out


def ck6_rep_check(window: Tuple[Number, Number] = (-3, 3), u=Fraction(1, 3),
                  vec_modes: Sequence[int] = (-1, 0, 1), alg: Optional[CK6Alg] = None) -> Report:
    """x.(y.w) - (-1)^{|x||y|} y.(x.w) = [x,y].w for basis pairs in window and basis vectors w."""
    alg = alg or CK6Alg()
    rep = Report("CK(6) defining module")
    keys = alg.basis(*window)
    vecs = [{(i, 2 * m): Fraction(1)} for i in range(8) for m in vec_modes]
    u = rat(u)
    mats = {k: alg.elem_matrix(alg.key(k)) for k in keys}
    act = lambda k, w: _mat_act(mats[k], w, u)
    for a, b in itertools.combinations_with_replacement(keys, 2):
        ab = alg.bracket(alg.key(a), alg.key(b))
        mab = alg.elem_matrix(ab) if ab else None
        s = supercomm_sign(alg.parity(a), alg.parity(b))
        for w in vecs:
            lhs = dict(act(a, act(b, w)))
            for k, c in act(b, act(a, w)).items():
                _acc(lhs, k, -s * c)
            rhs = _mat_act(mab, w, u) if mab else {}
            rep.checked += 1
            if lhs != rhs:
                rep.add(x=alg.key_str(a), y=alg.key_str(b), w=str(w))
    return rep


@dataclass
class CK6Summand:
    name: str
    components: Tuple[int, ...]
    c_value: Optional[Fraction]
    highest: int
    weight: Tuple[Fraction, ...]
    delta: Fraction


def ck6_summands(u=0, window: Tuple[Number, Number] = (-2, 2)) -> List[CK6Summand]:
    """Read off c-eigenvalue, highest vector, its h-weights and density for W+ and W-.

    Also returns the whole of W (name "W") with its highest vector for the full CK(6)-action.
    """
    alg = CK6Alg()
    u = rat(u)
    c = alg.c_elem()
    keys = alg.basis(*window)
    pos_all = [k for k in keys if alg.fdeg(k) > 0]
    # W+ and W- are modules over the centralizer of c, so highest means killed by its positive part
    pos_c = [k for k in pos_all if not alg.bracket(c, alg.key(k))]
    out = []
    for name, comps, pos in (("W", tuple(range(8)), pos_all), ("W+", W_PLUS, pos_c), ("W-", W_MINUS, pos_c)):
        cvals = set()
        for i in comps:
            r = ck6_defining_act(c, {(i, 0): Fraction(1)}, u)
            if set(r) != {(i, 0)}:
                raise NotMember(f"c does not act diagonally on {COMPONENT_NAMES[i]}")
            cvals.add(r[(i, 0)])
        killed = [i for i in comps
                  if all(not ck6_defining_act(alg.key(k), {(i, 0): Fraction(1)}, u) for k in pos)]
        if len(killed) != 1:
            raise NotMember(f"{name} has highest vectors {killed}")
        hv = killed[0]
        wt = tuple(ck6_defining_act(alg.key(("h", j, 0)), {(hv, 0): Fraction(1)}, u).get((hv, 0), Fraction(0))
                   for j in range(3))
        r = ck6_defining_act(alg.key(("vir", 2)), {(hv, 0): Fraction(1)}, u)
        delta = r.get((hv, 2), Fraction(0)) - u
        cv = cvals.pop() if len(cvals) == 1 else None
        out.append(CK6Summand(name, comps, cv, hv, wt, delta))
    return out


def ck6_check(window: Tuple[Number, Number] = (-3, 3), u=Fraction(1, 3)) -> Report:
    """Representation axiom plus the c-eigenvalues, highest weights and densities of W+ and W-."""
    rep = ck6_rep_check(window, u)
    expect = {"W": (None, (1, 0, 0)), "W+": (Fraction(1), (1, 0, 0)), "W-": (Fraction(-1), (1, 0, -1))}
    for s in ck6_summands(u):
        cval, wt = expect[s.name]
        rep.notes.append(f"{s.name}: c={s.c_value}, highest {COMPONENT_NAMES[s.highest]}, "
                         f"weight {tuple(str(x) for x in s.weight)}, delta={s.delta}")
        rep.checked += 1
        if s.c_value != cval or s.weight != tuple(Fraction(x) for x in wt):
            rep.add(summand=s.name, c=s.c_value, weight=[str(x) for x in s.weight])
    return rep


def frame_rep_check(alg: AlgebraDef, p: TensParams, window: Tuple[Number, Number] = (-2, 2),
                    vec_modes: Sequence[Number] = (-1, 0, 1)) -> Report:
    """C_L(F) acts on Tens(lambda, delta, u) through the frame by a representation."""
    fr = frame_for(alg)
    rep = Report(f"frame of {alg.name}")
    keys = [k for k in alg.basis(*window) if alg.fdeg(k) == 0]
    xis = (False, True) if fr.ctx == "G" else (False,)
    ns = getattr(alg, "ns", False)
    vecs = []
    for m in vec_modes:
        for x in xis:
            tp = rat(m) + (Fraction(1, 2) if (x and ns) else 0)
            vecs.append(TensVector.mono(tp, x))
    act = lambda k, v: frame_act(fr, alg.key(k), v, p)
    for a, b in itertools.combinations_with_replacement(keys, 2):
        ab = alg.bracket(alg.key(a), alg.key(b))
        s = supercomm_sign(alg.parity(a), alg.parity(b))
        for v in vecs:
            lhs = act(a, act(b, v)) + act(b, act(a, v)).scale(-s)
            rhs = frame_act(fr, ab, v, p)
            rep.checked += 1
            if lhs != rhs:
                rep.add(x=alg.key_str(a), y=alg.key_str(b), v=repr(v), lhs=repr(lhs), rhs=repr(rhs))
    return rep


def random_params(n_lam: int, draws: int = 10, seed: int = 0, bound: int = 7) -> List[TensParams]:
    """Deterministic rational (lambda, delta, u) draws with numerators and denominators up to bound."""
    rng = random.Random(seed)

    def q() -> Fraction:
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    return [TensParams(tuple(q() for _ in range(n_lam)), q(), q()) for _ in range(draws)]
