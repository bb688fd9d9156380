"""Grassmann superalgebra Grass(N) in standard or split generators.

Monomials are bitmasks; bit order is the canonical (ascending) order.
Standard kind: bit i is xi_{i+1}, Poisson form [xi_i, xi_j] = delta_ij.
Split kind: bit 2i is zeta_{i+1}, bit 2i+1 is eta_{i+1}, and for odd N the
last bit is xi; [zeta_i, eta_i] = 1 and [xi, xi] = 1.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, Tuple

from .scalar import GaussRat, I, rat

STD = "std"
SPLIT = "split"


class BasisMismatch(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


def popcount(m: int) -> int:
    return bin(m).count("1")


@lru_cache(maxsize=None)
def mono_mul(a: int, b: int) -> Tuple[int, int]:
    """Product of two monomials: (sign, mask), sign 0 if they share a generator."""
    if a & b:
        return 0, 0
    inv = 0
    bb = b
    while bb:
        low = bb & -bb
        inv += popcount(a & ~((low << 1) - 1))
        bb ^= low
    return (-1 if inv & 1 else 1), a | b


@lru_cache(maxsize=None)
def mono_deriv(i: int, m: int) -> Tuple[int, int]:
    """Left derivative d/d(gen i) of monomial m: (sign, mask) or (0, 0)."""
    bit = 1 << i
    if not m & bit:
        return 0, 0
    below = popcount(m & (bit - 1))
    return (-1 if below & 1 else 1), m ^ bit


@lru_cache(maxsize=None)
def poisson_pairs(kind: str, N: int) -> Tuple[Tuple[int, int], ...]:
    """Nonzero entries (i, j) of the Poisson matrix, all with value 1."""
    if kind == STD:
        return tuple((i, i) for i in range(N))
    out = []
    for p in range(N // 2):
        out.append((2 * p, 2 * p + 1))
        out.append((2 * p + 1, 2 * p))
    if N % 2:
        out.append((N - 1, N - 1))
    return tuple(out)


@lru_cache(maxsize=None)
def mono_poisson(kind: str, N: int, a: int, b: int) -> Tuple[Tuple[int, int], ...]:
    """[a, b] for monomials a, b as a tuple of (mask, integer coefficient)."""
    out: Dict[int, int] = {}
    pa = popcount(a) & 1
    sgn0 = 1 if pa else -1  # (-1)^{|a|+1}
    for i, j in poisson_pairs(kind, N):
        s1, da = mono_deriv(i, a)
        if not s1:
            continue
        s2, db = mono_deriv(j, b)
        if not s2:
            continue
        s3, m = mono_mul(da, db)
        if not s3:
            continue
        out[m] = out.get(m, 0) + sgn0 * s1 * s2 * s3
    return tuple((m, c) for m, c in sorted(out.items()) if c)


def gen_names(kind: str, N: int) -> List[str]:
    if kind == STD:
        return [f"xi{i + 1}" for i in range(N)]
    names = []
    for p in range(N // 2):
        names += [f"zeta{p + 1}", f"eta{p + 1}"]
    if N % 2:
        names.append("xi")
    return names


def mono_str(kind: str, N: int, m: int) -> str:
    if m == 0:
        return "1"
    names = gen_names(kind, N)
    return "".join(names[i] for i in range(N) if m >> i & 1)


_TOK = re.compile(r"(zeta\d+|eta\d+|xi\d*)")


def parse_mono(kind: str, N: int, s: str) -> Tuple[int, int]:
    """Parse a juxtaposed generator word to (sign, mask)."""
    s = s.strip()
    if s in ("1", ""):
        return 1, 0
    names = gen_names(kind, N)
    toks = _TOK.findall(s)
    if "".join(toks) != s:
        raise ValueError(f"cannot parse Grassmann word {s!r}")
    sign, mask = 1, 0
    for t in toks:
        if t not in names:
            raise ValueError(f"unknown generator {t!r} for {kind} Grass({N})")
        sg, mask = mono_mul(mask, 1 << names.index(t))
        if not sg:
            return 0, 0
        sign *= sg
    return sign, mask


def _norm(c):
    if isinstance(c, GaussRat) and not c.im:
        return c.re
    return c


class GrassElement:
    """Sparse element of Grass(N): mask -> coefficient (Fraction or GaussRat)."""

    __slots__ = ("kind", "N", "terms")

    def __init__(self, kind: str, N: int, terms: Mapping[int, object] | None = None):
        self.kind = kind
        self.N = N
        self.terms: Dict[int, object] = {}
        for m, c in (terms or {}).items():
            c = _norm(c if isinstance(c, GaussRat) else rat(c))
            if c:
                self.terms[m] = c

    @classmethod
    def gen(cls, kind: str, N: int, i: int) -> "GrassElement":
        return cls(kind, N, {1 << i: 1})

    @classmethod
    def parse(cls, kind: str, N: int, s: str) -> "GrassElement":
        sg, m = parse_mono(kind, N, s)
        return cls(kind, N, {m: sg} if sg else {})

    @classmethod
    def one(cls, kind: str, N: int) -> "GrassElement":
        return cls(kind, N, {0: 1})

    def _check(self, o: "GrassElement"):
        if o.kind != self.kind or o.N != self.N:
            raise BasisMismatch(f"{self.kind}/{self.N} vs {o.kind}/{o.N}")

    def __add__(self, o):
        self._check(o)
        t = dict(self.terms)
        for m, c in o.terms.items():
            t[m] = t.get(m, 0) + c
        return GrassElement(self.kind, self.N, t)

    def __neg__(self):
        return GrassElement(self.kind, self.N, {m: -c for m, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, k) -> "GrassElement":
        return GrassElement(self.kind, self.N, {m: c * k for m, c in self.terms.items()})

    def __mul__(self, o):
        if not isinstance(o, GrassElement):
            return self.scale(o)
        return gr_mul(self, o)

    def __rmul__(self, k):
        return self.scale(k)

    def __eq__(self, o):
        return isinstance(o, GrassElement) and (self.kind, self.N, self.terms) == (o.kind, o.N, o.terms)

    def __hash__(self):
        return hash((self.kind, self.N, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {popcount(m) for m in self.terms}

    def parity(self) -> int:
        ps = {popcount(m) & 1 for m in self.terms}
        if len(ps) > 1:
            raise ValueError("element is not parity-homogeneous")
        return ps.pop() if ps else 0

    def homogeneous_part(self, k: int) -> "GrassElement":
        return GrassElement(self.kind, self.N, {m: c for m, c in self.terms.items() if popcount(m) == k})

    def __iter__(self) -> Iterator[Tuple[int, object]]:
        return iter(sorted(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{mono_str(self.kind, self.N, m)}" for m, c in sorted(self.terms.items()))

    def to_json(self) -> list:
        out = []
        for m, c in sorted(self.terms.items()):
            gens = [i for i in range(self.N) if m >> i & 1]
            out.append({"kind": self.kind, "gens": gens, "coeff": str(c)})
        return out


def gr_mul(a: GrassElement, b: GrassElement) -> GrassElement:
    a._check(b)
    t: Dict[int, object] = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            s, m = mono_mul(m1, m2)
            if s:
                t[m] = t.get(m, 0) + s * c1 * c2
    return GrassElement(a.kind, a.N, t)


def gr_poisson(a: GrassElement, b: GrassElement) -> GrassElement:
    a._check(b)
    t: Dict[int, object] = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            for m, k in mono_poisson(a.kind, a.N, m1, m2):
                t[m] = t.get(m, 0) + k * c1 * c2
    return GrassElement(a.kind, a.N, t)


def gr_trace(a: GrassElement):
    """Coefficient of the top monomial."""
    return a.terms.get((1 << a.N) - 1, Fraction(0))


def gr_deriv(i: int, a: GrassElement) -> GrassElement:
    t = {}
    for m, c in a.terms.items():
        s, dm = mono_deriv(i, m)
        if s:
            t[dm] = t.get(dm, 0) + s * c
    return GrassElement(a.kind, a.N, t)


def _images(frm: str, N: int) -> List[GrassElement]:
    """Images of the generators of kind `frm` written in the other kind."""
    to = SPLIT if frm == STD else STD
    half = Fraction(1, 2)
    imgs: List[GrassElement] = []
    for p in range(N // 2):
        a, b = 2 * p, 2 * p + 1
        if frm == STD:
            # xi_a = zeta + eta/2, xi_b = -i (zeta - eta/2)
            imgs.append(GrassElement(to, N, {1 << a: 1, 1 << b: half}))
            imgs.append(GrassElement(to, N, {1 << a: -I, 1 << b: I * half}))
        else:
            # zeta = (xi_a + i xi_b)/2, eta = xi_a - i xi_b
            imgs.append(GrassElement(to, N, {1 << a: half, 1 << b: I * half}))
            imgs.append(GrassElement(to, N, {1 << a: 1, 1 << b: -I}))
    if N % 2:
        imgs.append(GrassElement(to, N, {1 << (N - 1): 1}))
    return imgs


def basis_change(a: GrassElement, to: str, N: int | None = None) -> GrassElement:
    """Rewrite a in the generators of kind `to`, preserving the Poisson structure."""
    if N is not None and N != a.N:
        raise DimensionMismatch(f"element lives in Grass({a.N}), not Grass({N})")
    if to not in (STD, SPLIT):
        raise ValueError(to)
    if a.kind == to:
        return a
    imgs = _images(a.kind, a.N)
    out = GrassElement(to, a.N)
    for m, c in a.terms.items():
        term = GrassElement.one(to, a.N)
        for i in range(a.N):
            if m >> i & 1:
                term = gr_mul(term, imgs[i])
        out = out + term.scale(c)
    return out
