"""Generic sparse engine for graded Lie superalgebras given by structure constants."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

Key = Hashable
Terms = Dict[Key, Fraction]


class FamilyMismatch(ValueError):
    pass


class IllegalKey(ValueError):
    pass


class NotInSubalgebra(ValueError):
    pass


def _acc(out: Dict, k, c):
    v = out.get(k, 0) + c
    if v:
        out[k] = v
    else:
        out.pop(k, None)


class AlgebraDef:
    """Structure-constant engine for one algebra.

    Subclasses implement `_bracket_keys`, `parity`, `tdeg`, `weight`, `fdeg`,
    `basis`, `key_str`. Key brackets are memoised per instance.
    """

    name: str = "?"
    n_weights: int = 0

    def __init__(self):
        self._cache: Dict[Tuple[Key, Key], Tuple[Tuple[Key, Fraction], ...]] = {}

    # -- to override
    def _bracket_keys(self, a: Key, b: Key) -> Mapping[Key, Fraction]:
        raise NotImplementedError

    def parity(self, k: Key) -> int:
        raise NotImplementedError

    def tdeg(self, k: Key) -> Fraction:
        raise NotImplementedError

    def weight(self, k: Key) -> Tuple[Fraction, ...]:
        raise NotImplementedError

    def fdeg(self, k: Key) -> Fraction:
        raise NotImplementedError

    def basis(self, lo, hi) -> List[Key]:
        raise NotImplementedError

    def key_str(self, k: Key) -> str:
        return repr(k)

    def is_legal(self, k: Key) -> bool:
        return True

    def parse_name(self, name: str, tpow: Fraction) -> "Elem":
        raise NotImplementedError(f"{self.name} has no element grammar")

    def is_rad(self, k: Key) -> bool:
        """True for keys of C_L(F) lying in its radical (act by zero on highest components)."""
        return False

    # -- engine
    def bracket_keys(self, a: Key, b: Key) -> Tuple[Tuple[Key, Fraction], ...]:
        r = self._cache.get((a, b))
        if r is None:
            raw = self._bracket_keys(a, b)
            r = tuple((k, Fraction(c)) for k, c in raw.items() if c)
            self._cache[(a, b)] = r
        return r

    def elem(self, terms: Mapping[Key, object] | None = None) -> "Elem":
        return Elem(self, terms or {})

    def key(self, k: Key, c=1) -> "Elem":
        if not self.is_legal(k):
            raise IllegalKey(f"{k!r} is not a basis key of {self.name}")
        return Elem(self, {k: c})

    def bracket(self, x: "Elem", y: "Elem") -> "Elem":
        if x.alg is not self or y.alg is not self:
            if x.alg.name != self.name or y.alg.name != self.name:
                raise FamilyMismatch(f"{x.alg.name} vs {y.alg.name} in {self.name}")
        out: Terms = {}
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                cab = ca * cb
                for k, c in self.bracket_keys(a, b):
                    _acc(out, k, c * cab)
        return Elem(self, out, _clean=True)

    def key_sort(self, k: Key):
        return (self.tdeg(k), repr(k))

    def sort_keys(self, keys: Iterable[Key]) -> List[Key]:
        return sorted(keys, key=self.key_sort)


class Elem:
    """Sparse linear combination of basis keys with rational coefficients."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: AlgebraDef, terms: Mapping[Key, object], _clean: bool = False):
        self.alg = alg
        if _clean:
            self.terms = dict(terms)
        else:
            self.terms = {}
            for k, c in terms.items():
                c = Fraction(c)
                if c:
                    _acc(self.terms, k, c)

    def _chk(self, o: "Elem"):
        if o.alg.name != self.alg.name:
            raise FamilyMismatch(f"{self.alg.name} vs {o.alg.name}")

    def __add__(self, o: "Elem") -> "Elem":
        self._chk(o)
        t = dict(self.terms)
        for k, c in o.terms.items():
            _acc(t, k, c)
        return Elem(self.alg, t, _clean=True)

    def __sub__(self, o: "Elem") -> "Elem":
        return self + o * -1

    def __neg__(self) -> "Elem":
        return self * -1

    def __mul__(self, c) -> "Elem":
        c = Fraction(c)
        if not c:
            return Elem(self.alg, {}, _clean=True)
        return Elem(self.alg, {k: v * c for k, v in self.terms.items()}, _clean=True)

    __rmul__ = __mul__

    def __eq__(self, o) -> bool:
        return isinstance(o, Elem) and o.alg.name == self.alg.name and o.terms == self.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, k: Key) -> Fraction:
        return self.terms.get(k, Fraction(0))

    def parity(self) -> int:
        ps = {self.alg.parity(k) for k in self.terms}
        if len(ps) > 1:
            raise ValueError("not parity-homogeneous")
        return ps.pop() if ps else 0

    def fdeg(self) -> Fraction:
        fs = {self.alg.fdeg(k) for k in self.terms}
        if len(fs) > 1:
            raise ValueError("not F-homogeneous")
        return fs.pop() if fs else Fraction(0)

    def weight(self) -> Tuple[Fraction, ...]:
        ws = {self.alg.weight(k) for k in self.terms}
        if len(ws) > 1:
            raise ValueError("not weight-homogeneous")
        return ws.pop() if ws else (Fraction(0),) * self.alg.n_weights

    def tdeg(self) -> Fraction:
        ds = {self.alg.tdeg(k) for k in self.terms}
        if len(ds) > 1:
            raise ValueError("not t-homogeneous")
        return ds.pop() if ds else Fraction(0)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in self.alg.sort_keys(self.terms):
            c = self.terms[k]
            parts.append(f"{c}*{self.alg.key_str(k)}")
        return " + ".join(parts)

    def to_json(self) -> list:
        return [{"key": self.alg.key_str(k), "coeff": str(self.terms[k])} for k in self.alg.sort_keys(self.terms)]


def bracket(alg: AlgebraDef, x: Elem, y: Elem) -> Elem:
    return alg.bracket(x, y)


def supercomm_sign(px: int, py: int) -> int:
    return -1 if (px & py) else 1


# ---------------------------------------------------------------- reports


@dataclass
class Report:
    name: str = ""
    checked: int = 0
    violations: List[dict] = field(default_factory=list)
    skipped: int = 0
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, **kw):
        self.violations.append({k: (str(v) if not isinstance(v, (int, str, list, dict)) else v) for k, v in kw.items()})

    def to_json(self) -> dict:
        d = {"checked": self.checked, "violations": self.violations}
        if self.skipped:
            d["skipped"] = self.skipped
        if self.notes:
            d["notes"] = self.notes
        if self.name:
            d["name"] = self.name
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def jacobi_check(alg: AlgebraDef, window: Tuple[object, object], keys: Optional[Sequence[Key]] = None,
                 max_violations: int = 50) -> Report:
    """Super-Jacobi identity on all unordered basis triples with t-degree in window.

    Also checks super-antisymmetry on all pairs, since unordered triples rely on it.
    """
    lo, hi = window
    ks = list(keys) if keys is not None else alg.basis(lo, hi)
    rep = Report(name=f"jacobi {alg.name} [{lo},{hi}]")
    par = {k: alg.parity(k) for k in ks}
    for i, a in enumerate(ks):
        for b in ks[i:]:
            ab = dict(alg.bracket_keys(a, b))
            ba = dict(alg.bracket_keys(b, a))
            s = -supercomm_sign(par[a], par[b])
            res = dict(ab)
            for k, c in ba.items():
                _acc(res, k, -s * c)
            if res and len(rep.violations) < max_violations:
                rep.add(kind="antisymmetry", x=alg.key_str(a), y=alg.key_str(b),
                        residual=repr(Elem(alg, res, _clean=True)))

    def br(x: Key, terms) -> Dict:
        out: Dict = {}
        for k, c in terms:
            for kk, cc in alg.bracket_keys(x, k):
                _acc(out, kk, cc * c)
        return out

    n = len(ks)
    for i in range(n):
        x = ks[i]
        px = par[x]
        for j in range(i, n):
            y = ks[j]
            py = par[y]
            xy = alg.bracket_keys(x, y)
            for l in range(j, n):
                z = ks[l]
                pz = par[z]
                rep.checked += 1
                out: Dict = {}
                s1 = supercomm_sign(px, pz)
                for k, c in br(x, alg.bracket_keys(y, z)).items():
                    _acc(out, k, s1 * c)
                s2 = supercomm_sign(py, px)
                for k, c in br(y, alg.bracket_keys(z, x)).items():
                    _acc(out, k, s2 * c)
                s3 = supercomm_sign(pz, py)
                for k, c in br(z, xy).items():
                    _acc(out, k, s3 * c)
                if out and len(rep.violations) < max_violations:
                    rep.add(x=alg.key_str(x), y=alg.key_str(y), z=alg.key_str(z),
                            residual=repr(Elem(alg, out, _clean=True)))
    return rep


@dataclass(frozen=True)
class WeightInfo:
    weight: Tuple[Fraction, ...]
    fdeg: Fraction
    parity: int


def weight_of(alg: AlgebraDef, key: Key) -> WeightInfo:
    if not alg.is_legal(key):
        raise IllegalKey(repr(key))
    return WeightInfo(alg.weight(key), alg.fdeg(key), alg.parity(key))


def triangular_split(alg: AlgebraDef, x: Elem) -> Tuple[Elem, Elem, Elem]:
    p, z, m = {}, {}, {}
    for k, c in x.terms.items():
        f = alg.fdeg(k)
        (p if f > 0 else m if f < 0 else z)[k] = c
    return Elem(alg, p, True), Elem(alg, z, True), Elem(alg, m, True)


@dataclass
class TriangularData:
    cartan_basis: List[Elem]
    F: Elem
    simple_coroots: List[Elem]
    root_of: Callable[[Key], Tuple[Fraction, ...]]


# ---------------------------------------------------------------- subalgebras


class Echelon:
    """Incremental row-echelon form for decomposing vectors against a basis."""

    def __init__(self):
        self.rows: List[Tuple[Key, Dict, Dict]] = []  # pivot, reduced vector, combination

    def add(self, label, vec: Mapping) -> bool:
        v = dict(vec)
        comb = {label: Fraction(1)}
        for piv, rv, rc in self.rows:
            c = v.get(piv)
            if c:
                f = c / rv[piv]
                for k, x in rv.items():
                    _acc(v, k, -f * x)
                for k, x in rc.items():
                    _acc(comb, k, -f * x)
        if not v:
            return False
        piv = min(v, key=repr)
        self.rows.append((piv, v, comb))
        return True

    def decompose(self, vec: Mapping) -> Optional[Dict]:
        v = dict(vec)
        out: Dict = {}
        for piv, rv, rc in self.rows:
            c = v.get(piv)
            if c:
                f = c / rv[piv]
                for k, x in rv.items():
                    _acc(v, k, -f * x)
                for k, x in rc.items():
                    _acc(out, k, f * x)
        if v:
            return None
        return out


class SubAlgebra(AlgebraDef):
    """Subalgebra with basis given by ambient elements, grouped in homogeneous blocks.

    Subclasses provide `block_of(ambient_key)` and `block_basis(block)` returning
    a list of (label, ambient Elem). Keys are labels. The bracket decomposes the
    ambient bracket, which doubles as a closure check.
    """

    def __init__(self, ambient: AlgebraDef):
        super().__init__()
        self.ambient = ambient
        self._ech: Dict = {}
        self._vec: Dict = {}

    def block_of(self, ak: Key):
        raise NotImplementedError

    def block_basis(self, block) -> List[Tuple[Key, Elem]]:
        raise NotImplementedError

    def block_of_label(self, label):
        raise NotImplementedError

    def _echelon(self, block) -> Echelon:
        e = self._ech.get(block)
        if e is None:
            e = Echelon()
            for lab, v in self.block_basis(block):
                self._vec[lab] = v
                if not e.add(lab, v.terms):
                    raise ValueError(f"dependent basis in block {block}")
            self._ech[block] = e
        return e

    def ambient_of(self, label) -> Elem:
        if label not in self._vec:
            self._echelon(self.block_of_label(label))
        if label not in self._vec:
            raise IllegalKey(repr(label))
        return self._vec[label]

    def embed(self, x: Elem) -> Elem:
        out = Elem(self.ambient, {}, True)
        for k, c in x.terms.items():
            out = out + self.ambient_of(k) * c
        return out

    def decompose(self, v: Elem) -> Elem:
        groups: Dict = {}
        for k, c in v.terms.items():
            groups.setdefault(self.block_of(k), {})[k] = c
        out: Dict = {}
        for blk, vec in groups.items():
            d = self._echelon(blk).decompose(vec)
            if d is None:
                raise NotInSubalgebra(f"{Elem(self.ambient, vec)} not in {self.name}")
            for k, c in d.items():
                _acc(out, k, c)
        return Elem(self, out, True)

    def contains(self, v: Elem) -> bool:
        try:
            self.decompose(v)
            return True
        except NotInSubalgebra:
            return False

    def _bracket_keys(self, a, b):
        amb = self.ambient.bracket(self.ambient_of(a), self.ambient_of(b))
        return self.decompose(amb).terms

    def _rep(self, label) -> Key:
        return next(iter(self.ambient_of(label).terms))

    def parity(self, k):
        return self.ambient.parity(self._rep(k))

    def tdeg(self, k):
        return self.ambient.tdeg(self._rep(k))

    def weight(self, k):
        return self.ambient.weight(self._rep(k))

    def fdeg(self, k):
        return self.ambient.fdeg(self._rep(k))


class FaultyAlgebra(AlgebraDef):
    """Test hook: a copy of `base` whose brackets into t-degree `tdeg` are scaled by `factor`."""

    def __init__(self, base: AlgebraDef, tdeg=0, factor=2):
        super().__init__()
        self.base = base
        self.name = base.name
        self.n_weights = base.n_weights
        self._tdeg = Fraction(tdeg)
        self._factor = Fraction(factor)

    def _bracket_keys(self, a, b):
        out = {}
        for k, c in self.base.bracket_keys(a, b):
            f = self._factor if (self.base.tdeg(k) == self._tdeg and self.base.tdeg(a) != 0) else 1
            out[k] = c * f
        return out

    def parity(self, k):
        return self.base.parity(k)

    def tdeg(self, k):
        return self.base.tdeg(k)

    def weight(self, k):
        return self.base.weight(k)

    def fdeg(self, k):
        return self.base.fdeg(k)

    def basis(self, lo, hi):
        return self.base.basis(lo, hi)

    def key_str(self, k):
        return self.base.key_str(k)

    def is_legal(self, k):
        return self.base.is_legal(k)

    def parse_name(self, name, tpow):
        return Elem(self, self.base.parse_name(name, tpow).terms)
