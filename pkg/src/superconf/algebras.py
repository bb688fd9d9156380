"""Concrete superconformal algebras: W(n), S(n;g), K(N), K(N;D), K_NS(N), Khat(4), CK(6), K2(2m), Vir."""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from . import grassmann as G
from .grassmann import SPLIT, STD, mono_deriv, mono_mul, mono_poisson, popcount
from .liecore import AlgebraDef, Elem, FamilyMismatch, IllegalKey, Report, SubAlgebra, _acc
from .scalar import nullspace, rat

HALF = Fraction(1, 2)

Func = Dict[Tuple[int, int], Fraction]  # (mask, t2) -> coeff


def fmul(f: Func, g: Func) -> Func:
    out: Func = {}
    for (m1, a), c1 in f.items():
        for (m2, b), c2 in g.items():
            s, m = mono_mul(m1, m2)
            if s:
                _acc(out, (m, a + b), s * c1 * c2)
    return out


def fD(f: Func) -> Func:
    """Ramond derivation D = t d/dt."""
    return {(m, a): c * Fraction(a, 2) for (m, a), c in f.items() if a}


def fderiv(i: int, f: Func) -> Func:
    out: Func = {}
    for (m, a), c in f.items():
        s, dm = mono_deriv(i, m)
        if s:
            _acc(out, (dm, a), s * c)
    return out


def fadd(*fs: Func) -> Func:
    out: Func = {}
    for f in fs:
        for k, c in f.items():
            _acc(out, k, c)
    return out


def fscale(f: Func, k) -> Func:
    k = Fraction(k)
    return {key: c * k for key, c in f.items()} if k else {}


def fparity(f: Func) -> int:
    ps = {popcount(m) & 1 for (m, _), c in f.items()}
    if len(ps) > 1:
        raise ValueError("function is not parity-homogeneous")
    return ps.pop() if ps else 0


def fstr(kind: str, N: int, f: Func) -> str:
    if not f:
        return "0"
    return " + ".join(f"{c}*{G.mono_str(kind, N, m)}@{Fraction(a, 2)}" for (m, a), c in sorted(f.items()))


def apply_field(X: Dict[int, Func], g: Func) -> Func:
    """Derivation X = sum_s X[s] d_s (slot -1 is D) applied to a function."""
    out: Func = {}
    for s, f in X.items():
        dg = fD(g) if s == -1 else fderiv(s, g)
        for k, c in fmul(f, dg).items():
            _acc(out, k, c)
    return out


_TERM = re.compile(r"^([A-Za-z0-9_]+)$")


# ============================================================ W(n)

class WAlg(AlgebraDef):
    """W(n) = Der C[t,1/t,xi_1..xi_n]; key (mask, t2, slot), slot -1 is D."""

    def __init__(self, n: int, kind: str = STD):
        super().__init__()
        if n < 1:
            raise ValueError("W(n) needs n >= 1")
        self.n = n
        self.kind = kind
        self.name = f"W({n})" if kind == STD else f"W({n};{kind})"
        self.n_weights = n
        self.eps_F = [Fraction(2 ** n - 1)] + [Fraction(-(2 ** k)) for k in range(1, n)]

    def is_legal(self, k) -> bool:
        m, t2, s = k
        return 0 <= m < (1 << self.n) and t2 % 2 == 0 and -1 <= s < self.n

    def parity(self, k) -> int:
        return (popcount(k[0]) + (k[2] >= 0)) & 1

    def tdeg(self, k) -> Fraction:
        return Fraction(k[1], 2)

    def weight(self, k):
        m, _, s = k
        w = [Fraction((m >> i) & 1) for i in range(self.n)]
        if s >= 0:
            w[s] -= 1
        return tuple(w)

    def fdeg(self, k) -> Fraction:
        return sum((a * b for a, b in zip(self.weight(k), self.eps_F)), Fraction(0))

    def is_rad(self, k) -> bool:
        return k[0] == (1 << self.n) - 1 and k[2] == -1

    def basis(self, lo, hi):
        out = []
        for n in range(int(Fraction(lo)), int(Fraction(hi)) + 1):
            if not lo <= n <= hi:
                continue
            for m in range(1 << self.n):
                for s in range(-1, self.n):
                    out.append((m, 2 * n, s))
        return out

    def apply(self, X: Dict[int, Func], g: Func) -> Func:
        return apply_field(X, g)

    def field(self, x: Elem) -> Dict[int, Func]:
        X: Dict[int, Func] = {}
        for (m, t2, s), c in x.terms.items():
            _acc(X.setdefault(s, {}), (m, t2), c)
        return {s: f for s, f in X.items() if f}

    def from_field(self, X: Dict[int, Func]) -> Elem:
        return Elem(self, {(m, t2, s): c for s, f in X.items() for (m, t2), c in f.items()})

    def _bracket_keys(self, a, b):
        ma, ta, sa = a
        mb, tb, sb = b
        X = {sa: {(ma, ta): Fraction(1)}}
        Y = {sb: {(mb, tb): Fraction(1)}}
        sign = -1 if (self.parity(a) and self.parity(b)) else 1
        out: Dict = {}
        for (m, t2), c in self.apply(X, {(mb, tb): Fraction(1)}).items():
            _acc(out, (m, t2, sb), c)
        for (m, t2), c in self.apply(Y, {(ma, ta): Fraction(1)}).items():
            _acc(out, (m, t2, sa), -sign * c)
        return out

    def key_str(self, k) -> str:
        m, t2, s = k
        g = "" if m == 0 else G.mono_str(self.kind, self.n, m)
        d = "D" if s == -1 else f"d{s + 1}"
        return f"{g}{d}@{Fraction(t2, 2)}"

    def parse_name(self, name: str, tpow) -> Elem:
        t2 = int(2 * rat(tpow))
        mt = re.fullmatch(r"(.*?)(D|d(\d+))", name)
        if not mt:
            raise ValueError(f"bad W element name {name!r}")
        sign, m = G.parse_mono(self.kind, self.n, mt.group(1) or "1")
        s = -1 if mt.group(2) == "D" else int(mt.group(3)) - 1
        k = (m, t2, s)
        if not self.is_legal(k):
            raise IllegalKey(name)
        return Elem(self, {k: sign})

    def cartan(self) -> List[Elem]:
        return [self.key((1 << i, 0, i)) for i in range(self.n)]

    def F(self) -> Elem:
        return Elem(self, {(1 << i, 0, i): self.eps_F[i] for i in range(self.n)})

    def coroots(self) -> List[Elem]:
        return [Elem(self, {(1 << i, 0, i): 1, (1 << (i + 1), 0, i + 1): -1}) for i in range(self.n - 1)]


def divergence(x: Elem) -> Func:
    """div(f D + sum f_i d_i) = D(f) + sum (-1)^{|f_i|} d f_i / d xi_i."""
    W = x.alg
    X = W.field(x)
    out = fD(X.get(-1, {}))
    for i in range(W.n):
        fi = X.get(i)
        if not fi:
            continue
        for (m, t2), c in fi.items():
            s, dm = mono_deriv(i, m)
            if s:
                _acc(out, (dm, t2), (-1 if popcount(m) & 1 else 1) * s * c)
    return out


def s_condition(gamma: Fraction, x: Elem) -> Func:
    """div(t^{gamma} x) t^{-gamma}: the defining linear condition of S(n;gamma)."""
    X = x.alg.field(x)
    return fadd(divergence(x), fscale(X.get(-1, {}), gamma))


# ============================================================ S(n; gamma)

class SAlg(SubAlgebra):
    """S(n;gamma) inside W(n); blocks (t2, weight) of the ambient grading."""

    def __init__(self, n: int, gamma):
        W = WAlg(n)
        super().__init__(W)
        self.n = n
        self.gamma = rat(gamma)
        self.name = f"S({n};{self.gamma})"
        self.n_weights = n
        self.gamma_integral = self.gamma.denominator == 1

    def block_of(self, ak):
        return (ak[1], self.ambient.weight(ak))

    def block_of_label(self, label):
        return label[:2]

    def _ambient_keys(self, block):
        t2, w = block
        out = []
        for m in range(1 << self.n):
            for s in range(-1, self.n):
                k = (m, t2, s)
                if self.ambient.weight(k) == w:
                    out.append(k)
        return out

    def block_basis(self, block):
        t2, w = block
        if all(x == 1 for x in w):
            return []  # only t^{t2/2} xi_1..xi_n D, never in the derived algebra
        keys = self._ambient_keys(block)
        conds: Dict = {}
        for j, k in enumerate(keys):
            for fk, c in s_condition(self.gamma, self.ambient.key(k)).items():
                conds.setdefault(fk, [Fraction(0)] * len(keys))[j] += c
        ns = nullspace(list(conds.values()), len(keys)) if conds else [
            [Fraction(int(i == j)) for j in range(len(keys))] for i in range(len(keys))]
        out = []
        for idx, vec in enumerate(ns):
            e = Elem(self.ambient, {k: c for k, c in zip(keys, vec) if c})
            out.append(((t2, w, idx), e))
        return out

    def basis(self, lo, hi):
        blocks = []
        for k in self.ambient.basis(lo, hi):
            b = self.block_of(k)
            if b not in blocks:
                blocks.append(b)
        out = []
        for b in blocks:
            self._echelon(b)
            out += [lab for lab, _ in self.block_basis(b)]
        return out

    def key_str(self, k) -> str:
        return "[" + repr(self.ambient_of(k)) + "]"

    def E(self, k: int) -> Elem:
        """E_k = -(t^k D + (k + gamma) t^k xi_1 d_1)."""
        W = self.ambient
        return self.decompose(Elem(W, {(0, 2 * k, -1): -1, (1, 2 * k, 0): -(k + self.gamma)}))

    def A(self, k: int) -> Elem:
        """A_k = t^k xi_1 D + (k + gamma) t^k xi_1 xi_2 d_2."""
        W = self.ambient
        return self.decompose(Elem(W, {(1, 2 * k, -1): 1, (3, 2 * k, 1): k + self.gamma}))

    def parse_name(self, name: str, tpow) -> Elem:
        k = rat(tpow)
        if name == "E":
            return self.E(int(k))
        if name == "A":
            return self.A(int(k))
        return self.decompose(self.ambient.parse_name(name, tpow))

    def coroots(self) -> List[Elem]:
        return [self.decompose(h) for h in self.ambient.coroots()]


def s_membership(gamma, x: Elem) -> bool:
    """Membership of a W(n)-element in S(n;gamma)."""
    gamma = rat(gamma)
    if s_condition(gamma, x):
        return False
    if gamma.denominator == 1:
        top = (1 << x.alg.n) - 1
        if any(k[0] == top and k[2] == -1 for k in x.terms):
            return False
    return True


# ============================================================ contact family

def k_bracket_mono(kind: str, N: int, a: int, n2: int, b: int, m2: int) -> Dict[Tuple[int, int], Fraction]:
    """[a(t^n), b(t^m)] = ab((2-k)/2 f D g - (2-l)/2 g D f) + [a,b](fg), t-powers doubled."""
    k, l = popcount(a), popcount(b)
    out: Dict = {}
    s, ab = mono_mul(a, b)
    if s:
        c = Fraction(2 - k, 2) * Fraction(m2, 2) - Fraction(2 - l, 2) * Fraction(n2, 2)
        if c:
            _acc(out, (ab, n2 + m2), s * c)
    for mm, c in mono_poisson(kind, N, a, b):
        _acc(out, (mm, n2 + m2), Fraction(c))
    return out


def _split_weight(N: int, m: int) -> Tuple[Fraction, ...]:
    return tuple(Fraction(((m >> (2 * i)) & 1) - ((m >> (2 * i + 1)) & 1)) for i in range(N // 2))


class KAlg(AlgebraDef):
    """Contact algebras K(N;D), K(N), K_NS(N); key (mask, t2)."""

    def __init__(self, N: int, derived: bool = True, ns: bool = False, kind: str = SPLIT):
        super().__init__()
        self.N = N
        self.kind = kind
        self.ns = ns
        self.derived = derived and N == 4
        base = "K" if (derived or N != 4) else "K"
        label = f"{N};D" if (N == 4 and not derived) else f"{N}"
        self.name = f"{base}{'_NS' if ns else ''}({label})" + ("" if kind == SPLIT else "[std]")
        self.n_weights = N // 2 if kind == SPLIT else 0
        self.top = (1 << N) - 1

    def is_legal(self, k) -> bool:
        m, t2 = k
        if not 0 <= m <= self.top:
            return False
        if self.ns:
            if t2 % 2 != popcount(m) % 2:
                return False
        elif t2 % 2:
            return False
        if self.derived and m == self.top and t2 == 0:
            return False
        return True

    def parity(self, k) -> int:
        return popcount(k[0]) & 1

    def tdeg(self, k) -> Fraction:
        return Fraction(k[1], 2)

    def weight(self, k):
        if self.kind != SPLIT:
            return ()
        return _split_weight(self.N, k[0])

    def fdeg(self, k) -> Fraction:
        return sum((w * 2 ** (i + 1) for i, w in enumerate(self.weight(k))), Fraction(0))

    def is_rad(self, k) -> bool:
        # C_L(F): monomials of weight 0; those with two or more pairs zeta_i eta_i form the radical
        m = k[0]
        if self.kind != SPLIT or any(self.weight(k)):
            return False
        pairs = sum(1 for i in range(self.N // 2) if (m >> (2 * i)) & 3 == 3)
        return pairs >= 2

    def basis(self, lo, hi):
        out = []
        lo2, hi2 = int(2 * Fraction(lo)), int(2 * Fraction(hi))
        for t2 in range(lo2, hi2 + 1):
            for m in range(self.top + 1):
                if self.is_legal((m, t2)):
                    out.append((m, t2))
        return out

    def _bracket_keys(self, a, b):
        out = k_bracket_mono(self.kind, self.N, a[0], a[1], b[0], b[1])
        if self.derived and out.get((self.top, 0)):
            raise IllegalKey("bracket left the derived algebra K(4)")
        return out

    def key_str(self, k) -> str:
        m, t2 = k
        g = "D" if m == 0 else G.mono_str(self.kind, self.N, m)
        return f"{g}@{Fraction(t2, 2)}"

    def parse_name(self, name: str, tpow) -> Elem:
        t2 = int(2 * rat(tpow))
        if name in ("D", "1"):
            sign, m = 1, 0
        else:
            sign, m = G.parse_mono(self.kind, self.N, name)
        if not self.is_legal((m, t2)):
            raise IllegalKey(f"{name}@{tpow} not in {self.name}")
        return Elem(self, {(m, t2): sign} if sign else {})

    def func(self, x: Elem) -> Func:
        return dict(x.terms)

    # triangular data in the split basis
    def cartan(self) -> List[Elem]:
        return [self.key((3 << (2 * i), 0)) for i in range(self.N // 2)]

    def F(self) -> Elem:
        return Elem(self, {(3 << (2 * i), 0): 2 ** (i + 1) for i in range(self.N // 2)})

    def coroots(self) -> List[Elem]:
        m = self.N // 2
        p = lambda i: (3 << (2 * i), 0)
        if self.N % 2 == 0:
            out = [Elem(self, {p(0): 1, p(1): 1})]
            out += [Elem(self, {p(i): 1, p(i - 1): -1}) for i in range(1, m)]
        else:
            out = [Elem(self, {p(0): 2})] if m >= 1 else []
            out += [Elem(self, {p(i): 1, p(i - 1): -1}) for i in range(1, m)]
        return out


# ============================================================ Khat(4)

C_MASK = -1


class KHat4(AlgebraDef):
    """Central extension Khat(4) of K(4); keys (mask, t2) with deg <= 3 and (C_MASK, t2) for c(t^n)."""

    def __init__(self, ns: bool = False, kind: str = SPLIT):
        super().__init__()
        self.N = 4
        self.kind = kind
        self.ns = ns
        self.top = 15
        self.name = f"Khat{'_NS' if ns else ''}(4)" + ("" if kind == SPLIT else "[std]")
        self.n_weights = 2 if kind == SPLIT else 0

    def deg(self, m: int) -> int:
        return 4 if m == C_MASK else popcount(m)

    def is_legal(self, k) -> bool:
        m, t2 = k
        if m == C_MASK:
            return t2 % 2 == 0
        if not 0 <= m < self.top:
            return False
        if self.ns:
            return t2 % 2 == popcount(m) % 2
        return t2 % 2 == 0

    def parity(self, k) -> int:
        return 0 if k[0] == C_MASK else popcount(k[0]) & 1

    def tdeg(self, k) -> Fraction:
        return Fraction(k[1], 2)

    def weight(self, k):
        if self.kind != SPLIT:
            return ()
        if k[0] == C_MASK:
            return (Fraction(0), Fraction(0))
        return _split_weight(4, k[0])

    def fdeg(self, k) -> Fraction:
        w = self.weight(k)
        return sum((x * 2 ** (i + 1) for i, x in enumerate(w)), Fraction(0))

    def basis(self, lo, hi):
        out = []
        for t2 in range(int(2 * Fraction(lo)), int(2 * Fraction(hi)) + 1):
            for m in list(range(self.top)) + [C_MASK]:
                if self.is_legal((m, t2)):
                    out.append((m, t2))
        return out

    def _bracket_keys(self, a, b):
        ma, na = a
        mb, nb = b
        k, l = self.deg(ma), self.deg(mb)
        if k > l or (k == l and k == 4):
            if k == 4 and l == 4:
                return {}
            r = self._raw(b, a)
            sgn = -1 if (k * l) % 2 else 1
            return {key: -sgn * c for key, c in r.items()}
        return self._raw(a, b)

    def _raw(self, a, b):
        """Bracket with deg(a) <= deg(b)."""
        ma, na = a
        mb, nb = b
        k, l = self.deg(ma), self.deg(mb)
        out: Dict = {}
        if l == 4:
            if k == 0:
                # [f, c(g)] = c(f D g)
                if nb:
                    out[(C_MASK, na + nb)] = Fraction(nb, 2)
            elif k == 1:
                # [a(f), c(g)] = [a, omega](f D g)
                if nb:
                    for mm, c in mono_poisson(self.kind, 4, ma, self.top):
                        _acc(out, (mm, na + nb), c * Fraction(nb, 2))
            return out
        if k + l == 4:
            if k == 1:
                s, ab = mono_mul(ma, mb)
                if s and ab == self.top:
                    out[(C_MASK, na + nb)] = Fraction(s, 2)
            for mm, c in mono_poisson(self.kind, 4, ma, mb):
                _acc(out, (mm, na + nb), Fraction(c))
            if k == 0:
                raise IllegalKey("degree-4 monomials are replaced by c")
            return out
        out = k_bracket_mono(self.kind, 4, ma, na, mb, nb)
        if any(m == self.top for m, _ in out):
            raise IllegalKey("bracket produced omega outside k+l=4")
        return out

    def key_str(self, k) -> str:
        m, t2 = k
        if m == C_MASK:
            g = "c"
        else:
            g = "D" if m == 0 else G.mono_str(self.kind, 4, m)
        return f"{g}@{Fraction(t2, 2)}"

    def parse_name(self, name: str, tpow) -> Elem:
        t2 = int(2 * rat(tpow))
        if name == "c":
            sign, m = 1, C_MASK
        elif name in ("D", "1"):
            sign, m = 1, 0
        else:
            sign, m = G.parse_mono(self.kind, 4, name)
        if not self.is_legal((m, t2)):
            raise IllegalKey(f"{name}@{tpow} not in {self.name}")
        return Elem(self, {(m, t2): sign} if sign else {})

    def is_rad(self, k) -> bool:
        return False

    def cartan(self) -> List[Elem]:
        return [self.key((3, 0)), self.key((12, 0)), self.key((C_MASK, 0))]

    def F(self) -> Elem:
        return Elem(self, {(3, 0): 2, (12, 0): 4})

    def coroots(self) -> List[Elem]:
        return [Elem(self, {(3, 0): 1, (12, 0): 1}), Elem(self, {(12, 0): 1, (3, 0): -1})]


def khat_pi(x: Elem, K4: KAlg) -> Elem:
    """pi(a(f)) = a(f), pi(c(f)) = omega(Df)."""
    out = {}
    for (m, t2), c in x.terms.items():
        if m == C_MASK:
            if t2:
                _acc(out, (15, t2), c * Fraction(t2, 2))
        else:
            _acc(out, (m, t2), c)
    return Elem(K4, out, True)


def khat_sigma(x: Elem, KH: KHat4) -> Elem:
    """Linear section K(4) -> Khat(4): sigma(omega(t^n)) = c(t^n)/n."""
    out = {}
    for (m, t2), c in x.terms.items():
        if m == 15:
            if not t2:
                raise IllegalKey("omega(t^0) is not in K(4)")
            _acc(out, (C_MASK, t2), c / Fraction(t2, 2))
        else:
            _acc(out, (m, t2), c)
    return Elem(KH, out, True)


# ============================================================ contact embedding

class NonHomogeneous(ValueError):
    pass


def contact_field(F: Func, N: int, kind: str = SPLIT) -> Dict[int, Func]:
    """nabla(F) = (F - E(F)/2) D + D(F) E / 2 - (-1)^{|F|} sum B_ij (dF/dxi_i) d/dxi_j, as slot -> coefficient."""
    try:
        p = fparity(F)
    except ValueError as e:
        raise NonHomogeneous(str(e))
    X: Dict[int, Func] = {}
    EF = {(m, a): c * popcount(m) for (m, a), c in F.items()}
    X[-1] = fadd(F, fscale(EF, -HALF))
    DF = fD(F)
    for i in range(N):
        X.setdefault(i, {})
        for k, c in fmul(DF, {(1 << i, 0): HALF}).items():
            _acc(X[i], k, c)
    sg = 1 if p else -1
    for i, j in G.poisson_pairs(kind, N):
        for k, c in fderiv(i, F).items():
            _acc(X[j], k, sg * c)
    return {s: f for s, f in X.items() if f}


def contact_embed(F: Func, N: int, kind: str = SPLIT, W: Optional[WAlg] = None) -> Elem:
    W = W or WAlg(N, kind)
    return W.from_field(contact_field(F, N, kind))


def contact_embed_elem(x: Elem, W: Optional[WAlg] = None) -> Elem:
    alg = x.alg
    W = W or WAlg(alg.N, alg.kind)
    out = Elem(W, {}, True)
    for k, c in x.terms.items():
        out = out + contact_embed({k: Fraction(1)}, alg.N, alg.kind, W) * c
    return out


def nabla_check(alg: AlgebraDef, window=(-3, 3)) -> Report:
    """nabla is a Lie homomorphism K(N) -> W(N) on all basis pairs in window."""
    W = WAlg(alg.N, alg.kind)
    keys = alg.basis(*window)
    img = {k: contact_embed_elem(alg.key(k), W) for k in keys}
    rep = Report(f"nabla homomorphism {alg.name} {list(window)}")
    for i, a in enumerate(keys):
        for b in keys[i:]:
            rep.checked += 1
            lhs = W.bracket(img[a], img[b])
            rhs = contact_embed_elem(alg.bracket(alg.key(a), alg.key(b)), W)
            if lhs.terms != rhs.terms:
                rep.add(a=alg.key_str(a), b=alg.key_str(b))
    return rep


# ============================================================ sigma involution

def sigma_mono(m: int) -> Tuple[int, int]:
    """Swap zeta_1 <-> eta_1 in a split monomial; returns (sign, mask)."""
    b = m & 3
    if b == 3:
        return -1, m
    if b == 0:
        return 1, m
    return 1, m ^ 3


C_LIFT_SIGN = -1


def sigma(x: Elem, c_sign: int = C_LIFT_SIGN) -> Elem:
    """sigma(t^n) = (-1)^n t^n, sigma(zeta_1) = eta_1; c(t^n) -> c_sign (-1)^n c(t^n) on Khat(4)."""
    alg = x.alg
    if not isinstance(alg, (KAlg, KHat4)) or alg.N % 2 or alg.kind != SPLIT or alg.ns:
        raise FamilyMismatch("sigma is defined on Ramond K(2m) and Khat(4) in the split basis")
    out = {}
    for (m, t2), c in x.terms.items():
        par = -1 if (t2 // 2) % 2 else 1
        if m == C_MASK:
            _acc(out, (m, t2), c * par * c_sign)
            continue
        s, mm = sigma_mono(m)
        _acc(out, (mm, t2), c * par * s)
    return Elem(alg, out, True)


def sigma_check(alg: AlgebraDef, window=(-3, 3), c_sign: int = C_LIFT_SIGN) -> Report:
    """sigma is an involution and a bracket automorphism on all basis pairs in window."""
    keys = alg.basis(*window)
    rep = Report(f"sigma on {alg.name} {list(window)}")
    img = {k: sigma(alg.key(k), c_sign) for k in keys}
    for k in keys:
        rep.checked += 1
        if sigma(img[k], c_sign).terms != {k: Fraction(1)}:
            rep.add(key=alg.key_str(k), problem="sigma^2 != id")
    for i, a in enumerate(keys):
        for b in keys[i:]:
            rep.checked += 1
            lhs = alg.bracket(img[a], img[b])
            rhs = sigma(alg.bracket(alg.key(a), alg.key(b)), c_sign)
            if lhs.terms != rhs.terms:
                rep.add(a=alg.key_str(a), b=alg.key_str(b), lhs=lhs, rhs=rhs)
    return rep


class K2Alg(SubAlgebra):
    """Twisted algebra K2(2m): sigma-fixed points of K(2m).

    Blocks are (cls, rest, t2): cls 0 for X, 1 for zeta_1 X / eta_1 X, 2 for zeta_1 eta_1 X,
    with X a monomial in zeta_2, eta_2, ....
    """

    def __init__(self, N: int):
        if N % 2 or N < 4:
            raise ValueError("K2(2m) needs m >= 2")
        amb = KAlg(N, derived=False)
        super().__init__(amb)
        self.N = N
        self.name = f"K2({N})"
        self.n_weights = N // 2 - 1

    def block_of(self, ak):
        m, t2 = ak
        b = m & 3
        cls = 0 if b == 0 else 2 if b == 3 else 1
        return (cls, m & ~3, t2)

    def block_of_label(self, label):
        return label

    def block_basis(self, block):
        cls, rest, t2 = block
        even = (t2 // 2) % 2 == 0
        if cls == 0:
            return [(block, self.ambient.key((rest, t2)))] if even else []
        if cls == 2:
            return [(block, self.ambient.key((rest | 3, t2)))] if not even else []
        s = 1 if even else -1
        return [(block, Elem(self.ambient, {(rest | 1, t2): 1, (rest | 2, t2): s}))]

    def basis(self, lo, hi):
        out = []
        for t2 in range(int(2 * Fraction(lo)), int(2 * Fraction(hi)) + 1):
            if t2 % 2:
                continue
            for rest in range(0, 1 << self.N, 4):
                for cls in (0, 1, 2):
                    b = (cls, rest, t2)
                    if self.block_basis(b):
                        self._echelon(b)
                        out.append(b)
        return out

    def weight(self, k):
        cls, rest, t2 = k
        return _split_weight(self.N, rest)[1:]

    def fdeg(self, k):
        return sum((w * 2 ** (i + 2) for i, w in enumerate(self.weight(k))), Fraction(0))

    def key_str(self, k) -> str:
        cls, rest, t2 = k
        x = "" if rest == 0 else G.mono_str(SPLIT, self.N, rest)
        pre = ["", "(zeta1+eta1)" if (t2 // 2) % 2 == 0 else "(zeta1-eta1)", "zeta1eta1"][cls]
        w = (pre + x) or "D"
        return f"{w}@{Fraction(t2, 2)}"

    def parse_name(self, name: str, tpow) -> Elem:
        """Names use s1 = zeta1+eta1 and a1 = zeta1-eta1 as prefixes, or plain K(2m) words."""
        t2 = int(2 * rat(tpow))
        amb = self.ambient
        if name.startswith("s1") or name.startswith("a1"):
            rest = name[2:] or "1"
            sg, rm = G.parse_mono(SPLIT, self.N, rest)
            s = 1 if name.startswith("s1") else -1
            e = Elem(amb, {(rm | 1, t2): sg, (rm | 2, t2): s * sg})
        else:
            e = amb.parse_name(name, tpow)
        return self.decompose(e)


def k2_basis(m: int, window) -> List[Elem]:
    K2 = K2Alg(2 * m)
    return [K2.embed(K2.key(b)) for b in K2.basis(*window)]


# ============================================================ Virasoro and Vir x h[t]

class VirAlg(AlgebraDef):
    """Witt algebra with basis E_n = -t^n D, [E_i, E_j] = (i - j) E_{i+j}."""

    name = "Vir"
    n_weights = 0

    def _bracket_keys(self, a, b):
        return {a + b: Fraction(a - b)} if a != b else {}

    def parity(self, k):
        return 0

    def tdeg(self, k):
        return Fraction(k)

    def weight(self, k):
        return ()

    def fdeg(self, k):
        return Fraction(0)

    def basis(self, lo, hi):
        return list(range(int(lo), int(hi) + 1))

    def key_str(self, k):
        return f"E@{k}"

    def parse_name(self, name, tpow):
        if name != "E":
            raise ValueError(f"unknown Vir element {name!r}")
        return self.key(int(rat(tpow)))


class VirHAlg(AlgebraDef):
    """g = Vir x h[t,1/t]: [E_n, E_m] = (n - m) E_{n+m}, [E_n, h_m] = -m h_{n+m}, [h, h] = 0."""

    name = "VirH"
    n_weights = 0

    def _bracket_keys(self, a, b):
        (ta, n), (tb, m) = a, b
        if ta == "E" and tb == "E":
            return {("E", n + m): Fraction(n - m)} if n != m else {}
        if ta == "E" and tb == "h":
            return {("h", n + m): Fraction(-m)} if m else {}
        if ta == "h" and tb == "E":
            return {("h", n + m): Fraction(n)} if n else {}
        return {}

    def parity(self, k):
        return 0

    def tdeg(self, k):
        return Fraction(k[1])

    def weight(self, k):
        return ()

    def fdeg(self, k):
        return Fraction(0)

    def basis(self, lo, hi):
        return [(t, n) for n in range(int(lo), int(hi) + 1) for t in ("E", "h")]

    def key_str(self, k):
        return f"{k[0]}@{k[1]}"

    def parse_name(self, name, tpow):
        if name not in ("E", "h"):
            raise ValueError(f"unknown element {name!r}")
        return self.key((name, int(rat(tpow))))


# ============================================================ CK(6)

Sym = Dict[Tuple[int, int], Fraction]  # (t2, dpow) -> coeff, t on the left
Mat = Dict[Tuple[int, int], Sym]


def sym_mul(x: Sym, y: Sym) -> Sym:
    out: Sym = {}
    for (a, k), c1 in x.items():
        for (b, l), c2 in y.items():
            bb = Fraction(b, 2)
            for j in range(k + 1):
                v = c1 * c2 * comb(k, j) * bb ** (k - j)
                if v:
                    _acc(out, (a + b, j + l), v)
    return out


def mat_mul(X: Mat, Y: Mat) -> Mat:
    rows: Dict[int, List] = {}
    for (i, j), s in Y.items():
        rows.setdefault(i, []).append((j, s))
    out: Mat = {}
    for (i, k), s1 in X.items():
        for j, s2 in rows.get(k, ()):
            p = sym_mul(s1, s2)
            if p:
                cur = out.setdefault((i, j), {})
                for kk, c in p.items():
                    _acc(cur, kk, c)
                if not cur:
                    del out[(i, j)]
    return out


def mat_add(X: Mat, Y: Mat, cy=1) -> Mat:
    out = {k: dict(v) for k, v in X.items()}
    for k, s in Y.items():
        cur = out.setdefault(k, {})
        for kk, c in s.items():
            _acc(cur, kk, cy * c)
        if not cur:
            del out[k]
    return out


LEVI = {}
for _p in itertools.permutations(range(4)):
    _inv = sum(1 for a in range(4) for b in range(a + 1, 4) if _p[a] > _p[b])
    LEVI[_p] = -1 if _inv % 2 else 1


def ck6_pf(s: Sequence[Sequence]) -> Fraction:
    """Pfaffian with volume x1^x2^x3^x4."""
    s = [[rat(v) for v in r] for r in s]
    return s[0][1] * s[2][3] - s[0][2] * s[1][3] + s[0][3] * s[1][2]


def ck6_phi(s: Sequence[Sequence]) -> List[List[Fraction]]:
    """phi(s) = -(Hodge dual of s); satisfies phi(s) s = s phi(s) = Pf(s) Id."""
    s = [[rat(v) for v in r] for r in s]
    out = [[Fraction(0)] * 4 for _ in range(4)]
    for p, e in LEVI.items():
        i, j, k, l = p
        out[i][j] -= Fraction(e, 2) * s[k][l]
    return out


def pfaffian_check(n_random: int = 50, seed: int = 0, bound: int = 9) -> Report:
    """phi(s) s = Pf(s) Id = s phi(s) on the 6 basis skew maps and random rational skew maps."""
    rng = random.Random(seed)
    mats = []
    for i, j in itertools.combinations(range(4), 2):
        s = [[Fraction(0)] * 4 for _ in range(4)]
        s[i][j], s[j][i] = Fraction(1), Fraction(-1)
        mats.append(s)
    for _ in range(n_random):
        s = [[Fraction(0)] * 4 for _ in range(4)]
        for i, j in itertools.combinations(range(4), 2):
            v = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
            s[i][j], s[j][i] = v, -v
        mats.append(s)
    rep = Report("Pfaffian identities")
    for s in mats:
        ph, pf = ck6_phi(s), ck6_pf(s)
        ident = [[pf if i == j else Fraction(0) for j in range(4)] for i in range(4)]
        for side, prod in (("phi(s)s", _mm(ph, s)), ("s phi(s)", _mm(s, ph))):
            rep.checked += 1
            if prod != ident:
                rep.add(side=side, s=[[str(x) for x in r] for r in s])
    return rep


def _mm(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(4)), Fraction(0)) for j in range(4)] for i in range(4)]


def is_skew(s) -> bool:
    return all(s[i][j] == -s[j][i] for i in range(4) for j in range(4))


def is_symmetric(s) -> bool:
    return all(s[i][j] == s[j][i] for i in range(4) for j in range(4))


# CK(6) weights: coordinates against H1, H2, H3 (the duals of eps_1, eps_2, eps_3)
_HD = [
    (HALF, -HALF, -HALF, HALF),
    (HALF, -HALF, HALF, -HALF),
    (HALF, HALF, -HALF, -HALF),
]
CK6_W = [tuple(_HD[c][i] for c in range(3)) for i in range(4)]  # weight of x_{i+1}
CK6_H = [(1, -1, 0, 0), (0, 0, 1, -1), (0, 1, -1, 0)]  # h1, h2, h3 as diagonals


def _wadd(*ws):
    return tuple(sum(x) for x in zip(*ws))


def _wneg(w):
    return tuple(-x for x in w)


class NotMember(ValueError):
    pass


class CK6Alg(AlgebraDef):
    """CK(6) as 8x8 matrices over the Weyl algebra; keys tagged by block type.

    ('vir', t2), ('e', i, j, t2) i != j, ('h', k, t2), ('sym', i, j, t2) i <= j, ('skew', i, j, t2) i < j.
    The skew part s: V* -> V sits in the upper-right block without D; the lower-left block
    V -> V* is H + phi(s) D + D(phi(s))/2 with H symmetric.
    """

    name = "CK(6)"
    n_weights = 3

    def __init__(self, ns: bool = False):
        super().__init__()
        self.ns = ns
        if ns:
            self.name = "CK_NS(6)"
        self._mat_cache: Dict = {}

    def is_legal(self, k) -> bool:
        t2 = k[-1]
        if self.ns:
            return t2 % 2 == self.parity(k)
        return t2 % 2 == 0

    def parity(self, k) -> int:
        return 1 if k[0] in ("sym", "skew") else 0

    def tdeg(self, k):
        return Fraction(k[-1], 2)

    def weight(self, k):
        z = (Fraction(0),) * 3
        tag = k[0]
        if tag in ("vir", "h"):
            return z
        i, j = k[1], k[2]
        if tag == "e":
            return _wadd(CK6_W[i], _wneg(CK6_W[j]))
        if tag == "skew":
            return _wadd(CK6_W[i], CK6_W[j])
        return _wneg(_wadd(CK6_W[i], CK6_W[j]))

    def fdeg(self, k):
        w = self.weight(k)
        return 2 * w[0] + 4 * w[1] + 8 * w[2]

    def keys_at(self, t2: int) -> List:
        out = [("vir", t2)]
        out += [("e", i, j, t2) for i in range(4) for j in range(4) if i != j]
        out += [("h", c, t2) for c in range(3)]
        out += [("sym", i, j, t2) for i in range(4) for j in range(i, 4)]
        out += [("skew", i, j, t2) for i in range(4) for j in range(i + 1, 4)]
        return [k for k in out if self.is_legal(k)]

    def basis(self, lo, hi):
        out = []
        for t2 in range(int(2 * Fraction(lo)), int(2 * Fraction(hi)) + 1):
            out += self.keys_at(t2)
        return out

    def matrix(self, k) -> Mat:
        M = self._mat_cache.get(k)
        if M is not None:
            return M
        tag, t2 = k[0], k[-1]
        n = Fraction(t2, 2)
        M = {}
        if tag == "vir":
            for i in range(4):
                M[(i, i)] = {(t2, 1): Fraction(1)}
                if n:
                    M[(i, i)][(t2, 0)] = n / 4
                M[(4 + i, 4 + i)] = {(t2, 1): Fraction(1)}
                if n:
                    M[(4 + i, 4 + i)][(t2, 0)] = 3 * n / 4
        elif tag == "e":
            i, j = k[1], k[2]
            M[(i, j)] = {(t2, 0): Fraction(1)}
            M[(4 + j, 4 + i)] = {(t2, 0): Fraction(-1)}
        elif tag == "h":
            d = CK6_H[k[1]]
            for i in range(4):
                if d[i]:
                    M[(i, i)] = {(t2, 0): Fraction(d[i])}
                    M[(4 + i, 4 + i)] = {(t2, 0): Fraction(-d[i])}
        elif tag == "sym":
            # symmetric H: V -> V*, lower-left block
            i, j = k[1], k[2]
            M[(4 + i, j)] = {(t2, 0): Fraction(1)}
            M[(4 + j, i)] = {(t2, 0): Fraction(1)}
        elif tag == "skew":
            # skew s: V* -> V (upper-right) together with phi(s)(fD + D(f)/2) in the lower-left block
            i, j = k[1], k[2]
            s = [[Fraction(0)] * 4 for _ in range(4)]
            s[i][j], s[j][i] = Fraction(1), Fraction(-1)
            M[(i, 4 + j)] = {(t2, 0): Fraction(1)}
            M[(j, 4 + i)] = {(t2, 0): Fraction(-1)}
            ph = ck6_phi(s)
            for a in range(4):
                for b in range(4):
                    if ph[a][b]:
                        e = {(t2, 1): ph[a][b]}
                        if n:
                            e[(t2, 0)] = ph[a][b] * n / 2
                        M[(4 + a, b)] = e
        else:
            raise IllegalKey(repr(k))
        self._mat_cache[k] = M
        return M

    def elem_matrix(self, x: Elem) -> Mat:
        out: Mat = {}
        for k, c in x.terms.items():
            out = mat_add(out, self.matrix(k), c)
        return out

    def _bracket_keys(self, a, b):
        X, Y = self.matrix(a), self.matrix(b)
        s = -1 if (self.parity(a) and self.parity(b)) else 1
        M = mat_add(mat_mul(X, Y), mat_mul(Y, X), -s)
        return self.decompose(M).terms

    def decompose(self, M: Mat) -> Elem:
        """Write a matrix as a combination of basis keys; raises NotMember if impossible."""
        by_t2: Dict[int, Mat] = {}
        for (i, j), s in M.items():
            for (t2, d), c in s.items():
                by_t2.setdefault(t2, {}).setdefault((i, j), {})[(t2, d)] = c
        out: Dict = {}
        for t2, Mt in by_t2.items():
            for k, c in self._decompose_mode(t2, Mt).items():
                _acc(out, k, c)
        return Elem(self, out, True)

    def _decompose_mode(self, t2: int, M: Mat) -> Dict:
        n = Fraction(t2, 2)

        def ent(i, j, d):
            return M.get((i, j), {}).get((t2, d), Fraction(0))

        for (i, j), s in M.items():
            for (_, d) in s:
                if d > 1:
                    raise NotMember("differential order > 1")
        f = ent(0, 0, 1)
        out: Dict = {}
        for i in range(4):
            for j in range(4):
                if ent(i, j, 1) != (f if i == j else 0):
                    raise NotMember("A block is not a + f D Id")
                if ent(4 + i, 4 + j, 1) != (f if i == j else 0):
                    raise NotMember("D block is not -a^T + f D Id")
                if ent(i, 4 + j, 1):
                    raise NotMember("upper-right block has a D term")
        a = [[ent(i, j, 0) - (f * n / 4 if i == j else 0) for j in range(4)] for i in range(4)]
        if sum(a[i][i] for i in range(4)):
            raise NotMember("a is not traceless")
        for i in range(4):
            for j in range(4):
                want = -a[j][i] + (f * 3 * n / 4 if i == j else 0)
                if ent(4 + i, 4 + j, 0) != want:
                    raise NotMember("D block mismatch")
        C = [[ent(i, 4 + j, 0) for j in range(4)] for i in range(4)]
        if not is_skew(C):
            raise NotMember("upper-right block is not skew")
        ph = ck6_phi(C)
        Hm = [[Fraction(0)] * 4 for _ in range(4)]
        for i in range(4):
            for j in range(4):
                if ent(4 + i, j, 1) != ph[i][j]:
                    raise NotMember("lower-left D-part is not phi(s)")
                Hm[i][j] = ent(4 + i, j, 0) - ph[i][j] * n / 2
        if not is_symmetric(Hm):
            raise NotMember("lower-left block lacks the D(phi(s))/2 correction or H is not symmetric")
        if f:
            out[("vir", t2)] = f
        for i in range(4):
            for j in range(4):
                if i != j and a[i][j]:
                    out[("e", i, j, t2)] = a[i][j]
        d = [a[i][i] for i in range(4)]
        c1 = d[0]
        c3 = d[1] + c1
        c2 = d[2] + c3
        for c, v in enumerate((c1, c2, c3)):
            if v:
                out[("h", c, t2)] = v
        for i in range(4):
            for j in range(i, 4):
                if Hm[i][j]:
                    out[("sym", i, j, t2)] = Hm[i][j]
        for i in range(4):
            for j in range(i + 1, 4):
                if C[i][j]:
                    out[("skew", i, j, t2)] = C[i][j]
        for k in out:
            if not self.is_legal(k):
                raise NotMember(f"illegal mode for {k}")
        return out

    def key_str(self, k) -> str:
        tag, t2 = k[0], k[-1]
        tp = Fraction(t2, 2)
        if tag == "vir":
            return f"vir@{tp}"
        if tag == "h":
            return f"h{k[1] + 1}@{tp}"
        i, j = k[1] + 1, k[2] + 1
        return {"e": f"x{i}d{j}", "skew": f"x{i}x{j}", "sym": f"d{i}d{j}"}[tag] + f"@{tp}"

    def parse_name(self, name: str, tpow) -> Elem:
        t2 = int(2 * rat(tpow))
        if name == "vir":
            return self.key(("vir", t2))
        if name == "c":
            return Elem(self, {("h", 0, t2): 1, ("h", 1, t2): 1, ("h", 2, t2): 2})
        m = re.fullmatch(r"h([123])", name)
        if m:
            return self.key(("h", int(m.group(1)) - 1, t2))
        m = re.fullmatch(r"(x|d)([1-4])(x|d)([1-4])", name)
        if not m:
            raise ValueError(f"bad CK6 element name {name!r}")
        a, i, b, j = m.group(1), int(m.group(2)) - 1, m.group(3), int(m.group(4)) - 1
        if a == "x" and b == "d":
            if i == j:
                raise ValueError("diagonal entries: use h1, h2, h3")
            return self.key(("e", i, j, t2))
        if a == "d" and b == "d":
            i, j = min(i, j), max(i, j)
            return self.key(("sym", i, j, t2))
        if a == "x" and b == "x" and i != j:
            sg = 1 if i < j else -1
            return self.key(("skew", min(i, j), max(i, j), t2), sg)
        raise ValueError(f"bad CK6 element name {name!r}")

    def cartan(self) -> List[Elem]:
        return [self.key(("h", c, 0)) for c in range(3)]

    def F(self) -> Elem:
        # eps-dual elements H1 = (h1 - h2)/2 ... expressed through h1, h2, h3: F = 2 H1 + 4 H2 + 8 H3
        diag = [2 * _HD[0][i] + 4 * _HD[1][i] + 8 * _HD[2][i] for i in range(4)]
        c1 = diag[0]
        c3 = diag[1] + c1
        c2 = diag[2] + c3
        return Elem(self, {("h", 0, 0): c1, ("h", 1, 0): c2, ("h", 2, 0): c3})

    def coroots(self) -> List[Elem]:
        return self.cartan()

    def c_elem(self, t2: int = 0) -> Elem:
        return self.parse_name("c", Fraction(t2, 2))


def ck6_membership(M: Mat, alg: Optional[CK6Alg] = None) -> bool:
    alg = alg or CK6Alg()
    try:
        alg.decompose(M)
        return True
    except NotMember:
        return False


# ============================================================ algebra ids

@dataclass(frozen=True)
class AlgebraId:
    family: str
    n: int = 0
    gamma: Fraction = Fraction(0)
    ns: bool = False
    variant: str = ""

    def __str__(self):
        s = {"W": f"W:{self.n}", "S": f"S:{self.n}:g={self.gamma}", "K": f"K:{self.n}", "KD": f"K:{self.n}:D",
             "Khat": "Khat:4", "CK6": "CK6", "K2": f"K2:{self.n}", "Vir": "Vir", "VirH": "VirH"}[self.family]
        return s + (":ns" if self.ns else "")


def parse_algebra_id(s: str) -> AlgebraId:
    parts = [p.strip() for p in s.strip().split(":") if p.strip()]
    if not parts:
        raise ValueError("empty algebra id")
    ns = "ns" in [p.lower() for p in parts[1:]]
    parts = [p for p in parts if p.lower() != "ns"]
    fam = parts[0]
    if fam == "W":
        return AlgebraId("W", int(parts[1]))
    if fam == "S":
        g = Fraction(0)
        for p in parts[2:]:
            if p.startswith("g="):
                g = Fraction(p[2:])
        return AlgebraId("S", int(parts[1]), g)
    if fam == "K":
        N = int(parts[1])
        if "D" in parts[2:]:
            return AlgebraId("KD", N, ns=ns)
        return AlgebraId("K", N, ns=ns)
    if fam == "Khat":
        return AlgebraId("Khat", 4, ns=ns)
    if fam == "CK6":
        return AlgebraId("CK6", 6, ns=ns)
    if fam == "K2":
        return AlgebraId("K2", int(parts[1]))
    if fam == "Vir":
        return AlgebraId("Vir")
    if fam == "VirH":
        return AlgebraId("VirH")
    raise ValueError(f"unknown algebra family {fam!r}")


_ALG_CACHE: Dict[AlgebraId, AlgebraDef] = {}


def make_algebra(aid) -> AlgebraDef:
    if isinstance(aid, str):
        aid = parse_algebra_id(aid)
    a = _ALG_CACHE.get(aid)
    if a is not None:
        return a
    f = aid.family
    if f == "W":
        a = WAlg(aid.n)
    elif f == "S":
        a = SAlg(aid.n, aid.gamma)
    elif f == "K":
        if aid.n < 1:
            raise ValueError("K(N) needs N >= 1")
        a = KAlg(aid.n, derived=True, ns=aid.ns)
    elif f == "KD":
        a = KAlg(aid.n, derived=False, ns=aid.ns)
    elif f == "Khat":
        a = KHat4(ns=aid.ns)
    elif f == "CK6":
        a = CK6Alg(ns=aid.ns)
    elif f == "K2":
        a = K2Alg(aid.n)
    elif f == "Vir":
        a = VirAlg()
    elif f == "VirH":
        a = VirHAlg()
    else:
        raise ValueError(f)
    _ALG_CACHE[aid] = a
    return a


_EL_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*)?\s*([A-Za-z][A-Za-z0-9_]*|1)\s*@\s*(-?\d+(?:/\d+)?)\s*")


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def parse_element(alg: AlgebraDef, s: str) -> Elem:
    """Parse `p/q*name@tpow` terms joined by + or -."""
    pos = 0
    out = Elem(alg, {}, True)
    s = s.strip()
    if not s:
        raise ParseError("empty expression", 0)
    first = True
    while pos < len(s):
        m = _EL_TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse {s[pos:]!r}", pos)
        sign, coef, name, tp = m.groups()
        if sign is None and not first:
            raise ParseError("missing + or - between terms", pos)
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        try:
            out = out + alg.parse_name(name, Fraction(tp)) * c
        except (ValueError, KeyError) as e:
            raise ParseError(str(e), pos)
        pos = m.end()
        first = False
    return out
