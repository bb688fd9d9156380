"""Exact scalars: rationals, half-integers, Gaussian rationals and small polynomials."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Rat = Fraction
Number = Union[int, Fraction]


def rat(x) -> Fraction:
    """Coerce ints, Fractions and strings like '3/4' to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def rat_json(x: Fraction) -> dict:
    x = rat(x)
    return {"num": x.numerator, "den": x.denominator}


def rat_from_json(d: Mapping) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


@dataclass(frozen=True, order=True)
class HalfInt:
    """A number in (1/2)Z stored as twice its value."""

    t2: int

    @classmethod
    def of(cls, x) -> "HalfInt":
        x = rat(x)
        d = 2 * x
        if d.denominator != 1:
            raise ValueError(f"{x} is not a half-integer")
        return cls(int(d))

    @property
    def value(self) -> Fraction:
        return Fraction(self.t2, 2)

    @property
    def is_integral(self) -> bool:
        return self.t2 % 2 == 0

    def __add__(self, o: "HalfInt") -> "HalfInt":
        return HalfInt(self.t2 + o.t2)

    def __sub__(self, o: "HalfInt") -> "HalfInt":
        return HalfInt(self.t2 - o.t2)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.t2)

    def __str__(self) -> str:
        return str(self.value)

    def to_json(self) -> dict:
        return {"t2": self.t2}


@dataclass(frozen=True)
class GaussRat:
    """Element re + im*i of Q(i); used only for the split/standard basis change."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, o):
        o = _g(o)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-_g(o))

    def __rsub__(self, o):
        return _g(o) - self

    def __mul__(self, o):
        o = _g(o)
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, o):
        try:
            o = _g(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        if not self.im:
            return str(self.re)
        return f"({self.re}+{self.im}i)"


I = GaussRat(Fraction(0), Fraction(1))


def _g(x) -> GaussRat:
    if isinstance(x, GaussRat):
        return x
    return GaussRat(rat(x), Fraction(0))


# ---------------------------------------------------------------- linear algebra

def _dm(rows: Sequence[Sequence[Number]], ncols: int | None = None) -> DomainMatrix:
    rows = [[QQ(int(Fraction(v).numerator), int(Fraction(v).denominator)) for v in r] for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return DomainMatrix(rows, (len(rows), ncols), QQ)


def _to_frac(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def rank(rows: Sequence[Sequence[Number]]) -> int:
    """Exact rank over Q."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    return _dm(rows).rank()


def nullspace(rows: Sequence[Sequence[Number]], ncols: int) -> List[List[Fraction]]:
    """Basis of {x : A x = 0} over Q, as a list of vectors of length ncols."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ns = _dm(rows, ncols).nullspace().to_Matrix()
    out = []
    for i in range(ns.rows):
        out.append([Fraction(int(x.p), int(x.q)) for x in ns.row(i)])
    return out


def solve_unique(rows: Sequence[Sequence[Number]], rhs: Sequence[Number]) -> List[Fraction] | None:
    """Solve A x = b; return None if inconsistent. Requires full column rank."""
    if not rows:
        return None
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m = _dm(aug, ncols + 1).rref()[0].to_Matrix()
    sol = [Fraction(0)] * ncols
    seen = set()
    for i in range(m.rows):
        row = [Fraction(int(x.p), int(x.q)) for x in m.row(i)]
        piv = next((j for j, v in enumerate(row) if v), None)
        if piv is None:
            continue
        if piv == ncols:
            return None
        if any(row[j] for j in range(piv + 1, ncols)):
            raise ValueError("system is underdetermined")
        sol[piv] = row[ncols]
        seen.add(piv)
    if len(seen) != ncols:
        raise ValueError("system is underdetermined")
    return sol


# ---------------------------------------------------------------- polynomials

class GridDeficient(ValueError):
    pass


class NoFit(ValueError):
    pass


Exps = Tuple[int, ...]


class MultiPoly:
    """Sparse polynomial over Q in named variables."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exps, Number] | None = None):
        self.variables: Tuple[str, ...] = tuple(variables)
        self.terms: Dict[Exps, Fraction] = {}
        for e, c in (terms or {}).items():
            c = rat(c)
            if c:
                e = tuple(e)
                if len(e) != len(self.variables):
                    raise ValueError("exponent arity mismatch")
                self.terms[e] = self.terms.get(e, Fraction(0)) + c
                if not self.terms[e]:
                    del self.terms[e]

    @classmethod
    def const(cls, variables: Sequence[str], c: Number) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        e = [0] * len(variables)
        e[list(variables).index(name)] = 1
        return cls(variables, {tuple(e): 1})

    def _same(self, o) -> "MultiPoly":
        if isinstance(o, MultiPoly):
            if o.variables != self.variables:
                raise ValueError("variable mismatch")
            return o
        return MultiPoly.const(self.variables, rat(o))

    def __add__(self, o):
        o = self._same(o)
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, Fraction(0)) + c
        return MultiPoly(self.variables, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._same(o))

    def __rsub__(self, o):
        return self._same(o) - self

    def __mul__(self, o):
        o = self._same(o)
        t: Dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.variables, t)

    __rmul__ = __mul__

    def __eq__(self, o):
        try:
            o = self._same(o)
        except (ValueError, TypeError):
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, *point: Number) -> Fraction:
        return self.evaluate(point)

    def evaluate(self, point: Sequence[Number]) -> Fraction:
        pt = [rat(p) for p in point]
        s = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            s += v
        return s

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=0)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mon = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(self.variables, e) if k)
            parts.append(f"{c}*{mon}" if mon else str(c))
        return " + ".join(parts)


def poly_fit(samples: Iterable[Tuple[Sequence[Number], Number]], degree_bound) -> MultiPoly:
    """Interpolate samples on a full grid by a polynomial of bounded degree per variable.

    degree_bound is an int (same for all variables) or a sequence of ints.
    Extra grid points beyond degree_bound+1 per axis are used as residual checks.
    """
    samples = [(tuple(rat(x) for x in p), rat(v)) for p, v in samples]
    if not samples:
        raise GridDeficient("no samples")
    nv = len(samples[0][0])
    bounds = [degree_bound] * nv if isinstance(degree_bound, int) else list(degree_bound)
    table = {}
    for p, v in samples:
        if p in table and table[p] != v:
            raise NoFit(f"conflicting values at {p}")
        table[p] = v
    axes = [sorted({p[i] for p in table}) for i in range(nv)]
    for i in range(nv):
        if len(axes[i]) < bounds[i] + 1:
            raise GridDeficient(f"axis {i} has {len(axes[i])} points, need {bounds[i] + 1}")
    for p in itertools.product(*axes):
        if p not in table:
            raise GridDeficient(f"missing grid point {p}")
    names = [f"x{i}" for i in range(nv)]
    nodes = [axes[i][: bounds[i] + 1] for i in range(nv)]
    result = MultiPoly(names)
    # tensor-product Lagrange basis
    basis_1d = []
    for i in range(nv):
        polys = []
        for a in nodes[i]:
            lp = MultiPoly.const(names, 1)
            for b in nodes[i]:
                if b != a:
                    lp = lp * (MultiPoly.var(names, names[i]) - b) * Fraction(1) * (1 / (a - b))
            polys.append(lp)
        basis_1d.append(polys)
    for idx in itertools.product(*[range(len(n)) for n in nodes]):
        v = table[tuple(nodes[i][idx[i]] for i in range(nv))]
        if not v:
            continue
        term = MultiPoly.const(names, v)
        for i in range(nv):
            term = term * basis_1d[i][idx[i]]
        result = result + term
    for p, v in table.items():
        if result.evaluate(p) != v:
            raise NoFit(f"residual at {p}")
    return result


def rename(p: MultiPoly, variables: Sequence[str]) -> MultiPoly:
    return MultiPoly(variables, p.terms)
