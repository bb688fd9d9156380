"""Explicit 2-cocycles, central extensions and the order-3 cocycle of Khat(4)."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .algebras import (C_MASK, Func, KAlg, KHat4, SAlg, VirAlg, VirHAlg, WAlg, apply_field, contact_field, fadd,
                       fscale, fstr, khat_sigma)
from .grassmann import SPLIT, STD, mono_deriv, mono_mul, popcount
from .liecore import AlgebraDef, Elem, IllegalKey, Key, Report, _acc, supercomm_sign
from .scalar import rank

HALF = Fraction(1, 2)


class DomainMismatch(ValueError):
    pass


class UnderdeterminedSlot(ValueError):
    """The requested cocycle value is not among the printed ones."""


class CocycleId(str, enum.Enum):
    psi = "psi"
    psi1 = "psi1"
    psi2 = "psi2"
    psi3 = "psi3"
    psi4 = "psi4"
    phi1 = "phi1"
    phi2 = "phi2"
    phi3 = "phi3"


KeyCocycle = Callable[[AlgebraDef, Key, Key], Fraction]


# ---------------------------------------------------------------- key-level formulas

def _trace(alg: AlgebraDef, a: int, b: int) -> int:
    s, m = mono_mul(a, b)
    return s if (s and m == (1 << alg.N) - 1) else 0


def _balanced(alg: AlgebraDef, a: Key, b: Key) -> bool:
    return alg.tdeg(a) + alg.tdeg(b) == 0


def _psi(alg, a, b) -> Fraction:
    if not _balanced(alg, a, b):
        return Fraction(0)
    k = popcount(a[0])
    return Fraction(2 - k, 2) * _trace(alg, a[0], b[0])


def _psi1(alg, a, b) -> Fraction:
    if not _balanced(alg, a, b):
        return Fraction(0)
    if a[0] == 0 and b[0] == 0:
        return alg.tdeg(a) ** 3
    raise UnderdeterminedSlot(f"psi1({alg.key_str(a)}, {alg.key_str(b)}) is not printed")


def _psi2(alg, a, b) -> Fraction:
    if not _balanced(alg, a, b):
        return Fraction(0)
    if a[0] == 0 and b[0] == 0:
        return Fraction(0)
    if popcount(a[0]) == 2 and popcount(b[0]) == 2:
        return alg.tdeg(a) * _trace(alg, a[0], b[0])
    raise UnderdeterminedSlot(f"psi2({alg.key_str(a)}, {alg.key_str(b)}) is not printed")


def _vh(alg, k):
    return ("E", k) if isinstance(alg, VirAlg) else k


def _phi(i: int) -> KeyCocycle:
    def f(alg, a, b):
        (ta, n), (tb, m) = _vh(alg, a), _vh(alg, b)
        if n + m:
            return Fraction(0)
        n = Fraction(n)
        if i == 1 and ta == tb == "h":
            return n
        if i == 2 and {ta, tb} == {"E", "h"}:
            return n * n if ta == "E" else -n * n
        if i == 3 and ta == tb == "E":
            return n ** 3
        return Fraction(0)
    return f


def _psi3(alg, a, b) -> Fraction:
    (ta, n), (tb, m) = a, b
    if n + m:
        return Fraction(0)
    if ta == tb == "h":
        return Fraction(2 * n)
    raise UnderdeterminedSlot(f"psi3({ta}@{n}, {tb}@{m}) is not printed")


def _psi4(alg, a, b) -> Fraction:
    # t^n d/dt read as the degree-n field t^n D = -E_n
    (ta, n), (tb, m) = a, b
    if n + m:
        return Fraction(0)
    if ta == "E" and tb == "h":
        return Fraction(-n * n)
    if ta == "h" and tb == "E":
        return Fraction(m * m)
    raise UnderdeterminedSlot(f"psi4({ta}@{n}, {tb}@{m}) is not printed")


@dataclass(frozen=True)
class Cocycle:
    name: str
    fn: KeyCocycle
    total: bool
    domain: str

    def on_keys(self, alg: AlgebraDef, a: Key, b: Key) -> Fraction:
        return self.fn(alg, a, b)


COCYCLES: Dict[CocycleId, Cocycle] = {
    CocycleId.psi: Cocycle("psi", _psi, True, "K(4)"),
    CocycleId.psi1: Cocycle("psi1", _psi1, False, "K(4)"),
    CocycleId.psi2: Cocycle("psi2", _psi2, False, "K(4)"),
    CocycleId.psi3: Cocycle("psi3", _psi3, False, "W(2)"),
    CocycleId.psi4: Cocycle("psi4", _psi4, False, "W(1)"),
    CocycleId.phi1: Cocycle("phi1", _phi(1), True, "VirH"),
    CocycleId.phi2: Cocycle("phi2", _phi(2), True, "VirH"),
    CocycleId.phi3: Cocycle("phi3", _phi(3), True, "VirH"),
}


def get_cocycle(cid: Union[str, CocycleId, Cocycle]) -> Cocycle:
    if isinstance(cid, Cocycle):
        return cid
    try:
        return COCYCLES[CocycleId(cid)]
    except ValueError:
        raise DomainMismatch(f"unknown cocycle {cid!r}")


# ---------------------------------------------------------------- current subalgebras Vir x h[t]

def h_element(W: WAlg, n: int) -> Elem:
    """h(t^n): xi d/dxi on W(1), xi_1 d_2 - xi_2 d_1 on W(2)."""
    if W.n == 1:
        return Elem(W, {(1, 2 * n, 0): 1})
    if W.n == 2:
        return Elem(W, {(1, 2 * n, 1): 1, (2, 2 * n, 0): -1})
    raise DomainMismatch("h is defined on W(1) and W(2)")


def virh_embed(W: WAlg, k: Key) -> Elem:
    """E_n -> -t^n D, h_n -> h(t^n)."""
    t, n = k
    if t == "E":
        return Elem(W, {(0, 2 * n, -1): -1})
    return h_element(W, n)


def virh_coordinates(x: Elem) -> Tuple[Elem, Elem]:
    """Split a W(1)/W(2)/S(2;g) element into its Vir x h[t] part and a remainder in W."""
    alg = x.alg
    if isinstance(alg, SAlg):
        x = alg.embed(x)
        alg = x.alg
    if not isinstance(alg, WAlg) or alg.n not in (1, 2):
        raise DomainMismatch(f"{alg.name} carries no printed psi3/psi4 slots")
    VH = VirHAlg()
    coords: Dict = {}
    for (m, t2, s), c in x.terms.items():
        if m == 0 and s == -1:
            _acc(coords, ("E", t2 // 2), -c)
        elif (m, s) == (1, 1 if alg.n == 2 else 0):
            _acc(coords, ("h", t2 // 2), c)
    v = Elem(VH, coords, True)
    rest = x
    for k, c in coords.items():
        rest = rest - virh_embed(alg, k) * c
    return v, rest


def _to_keys(cid: CocycleId, x: Elem) -> Tuple[AlgebraDef, Elem, Elem]:
    alg = x.alg
    if cid in (CocycleId.psi, CocycleId.psi1, CocycleId.psi2):
        if not isinstance(alg, KAlg) or alg.N != 4:
            raise DomainMismatch(f"{cid.value} lives on K(4), got {alg.name}")
        return alg, x, Elem(alg, {}, True)
    if cid in (CocycleId.phi1, CocycleId.phi2, CocycleId.phi3):
        if isinstance(alg, VirAlg) and cid is CocycleId.phi3:
            return alg, x, Elem(alg, {}, True)
        if not isinstance(alg, VirHAlg):
            raise DomainMismatch(f"{cid.value} lives on Vir x h[t], got {alg.name}")
        return alg, x, Elem(alg, {}, True)
    if isinstance(alg, VirHAlg):
        return alg, x, Elem(alg, {}, True)
    base = alg.ambient if isinstance(alg, SAlg) else alg
    want = 2 if cid is CocycleId.psi3 else 1
    if not isinstance(base, WAlg) or base.n != want:
        raise DomainMismatch(f"{cid.value} lives on W({want}), got {alg.name}")
    v, rest = virh_coordinates(x)
    return v.alg, v, rest


def cocycle_eval(cid: Union[str, CocycleId], x: Elem, y: Elem) -> Fraction:
    """Bilinear value of a printed cocycle; E_0-invariant, so unbalanced pairs give 0."""
    cid = CocycleId(cid)
    co = COCYCLES[cid]
    ax, xv, xr = _to_keys(cid, x)
    ay, yv, yr = _to_keys(cid, y)
    for r, other in ((xr, y), (yr, x)):
        for k in r.terms:
            if any(r.alg.tdeg(k) + other.alg.tdeg(j) == 0 for j in other.terms):
                raise UnderdeterminedSlot(f"{cid.value} is not printed on {r.alg.key_str(k)}")
    out = Fraction(0)
    for a, ca in xv.terms.items():
        for b, cb in yv.terms.items():
            out += ca * cb * co.on_keys(ax, a, b)
    return out


# ---------------------------------------------------------------- cocycle identity

def _eval_terms(co: Cocycle, alg, terms, z) -> Fraction:
    return sum((c * co.on_keys(alg, k, z) for k, c in terms), Fraction(0))


def _balanced_triples(alg: AlgebraDef, keys: Sequence[Key]):
    by_deg: Dict[Fraction, List[int]] = {}
    for i, k in enumerate(keys):
        by_deg.setdefault(alg.tdeg(k), []).append(i)
    for i, a in enumerate(keys):
        for j in range(i, len(keys)):
            b = keys[j]
            for l in by_deg.get(-(alg.tdeg(a) + alg.tdeg(b)), ()):
                if l >= j:
                    yield a, b, keys[l]


def cocycle_identity(co: Cocycle, alg: AlgebraDef, keys: Sequence[Key], name: str = "",
                     max_violations: int = 50) -> Report:
    """(-1)^{|x||z|} c([x,y],z) + cyclic = 0 on balanced triples; also super-antisymmetry on pairs.

    Triples touching an unprinted slot through a nonzero bracket are counted as skipped.
    """
    rep = Report(name=name or f"cocycle {co.name} on {alg.name}")
    par = {k: alg.parity(k) for k in keys}
    for i, a in enumerate(keys):
        for b in keys[i:]:
            if not _balanced(alg, a, b):
                continue
            try:
                v = co.on_keys(alg, a, b) + supercomm_sign(par[a], par[b]) * co.on_keys(alg, b, a)
            except UnderdeterminedSlot:
                continue
            if v and len(rep.violations) < max_violations:
                rep.add(kind="antisymmetry", x=alg.key_str(a), y=alg.key_str(b), residual=str(v))
    rep.notes.append("triples with nonzero total t-degree vanish identically and are not enumerated")
    for x, y, z in _balanced_triples(alg, keys):
        px, py, pz = par[x], par[y], par[z]
        try:
            v = (supercomm_sign(px, pz) * _eval_terms(co, alg, alg.bracket_keys(x, y), z)
                 + supercomm_sign(py, px) * _eval_terms(co, alg, alg.bracket_keys(y, z), x)
                 + supercomm_sign(pz, py) * _eval_terms(co, alg, alg.bracket_keys(z, x), y))
        except UnderdeterminedSlot:
            rep.skipped += 1
            continue
        rep.checked += 1
        if v and len(rep.violations) < max_violations:
            rep.add(x=alg.key_str(x), y=alg.key_str(y), z=alg.key_str(z), residual=str(v))
    return rep


def _window_keys(alg: AlgebraDef, window) -> List[Key]:
    lo, hi = window
    return alg.basis(lo, hi)


def cocycle_check(cid: Union[str, CocycleId, Cocycle], alg: AlgebraDef, window) -> Report:
    """Exhaustive cocycle identity over basis triples in the window.

    For psi3 / psi4 the printed slots sit on Vir x h[t] inside W(2) / W(1); the check runs
    there, after verifying that E_n -> -t^n D, h_n -> h(t^n) is a homomorphism on the window.
    """
    co = get_cocycle(cid)
    lo, hi = window
    if co.name in ("psi3", "psi4") and not isinstance(alg, VirHAlg):
        base = alg.ambient if isinstance(alg, SAlg) else alg
        want = 2 if co.name == "psi3" else 1
        if not isinstance(base, WAlg) or base.n != want:
            raise DomainMismatch(f"{co.name} lives on W({want}), got {alg.name}")
        VH = VirHAlg()
        keys = VH.basis(lo, hi)
        hom = 0
        for a in keys:
            for b in keys:
                lhs = base.bracket(virh_embed(base, a), virh_embed(base, b))
                rhs = Elem(base, {}, True)
                for k, c in VH.bracket_keys(a, b):
                    rhs = rhs + virh_embed(base, k) * c
                if lhs != rhs:
                    hom += 1
        rep = cocycle_identity(co, VH, keys, name=f"cocycle {co.name} on Vir x h[t] in {alg.name} [{lo},{hi}]")
        rep.notes.append(f"embedding Vir x h[t] -> {base.name}: {hom} bracket mismatches on {len(keys) ** 2} pairs")
        if hom:
            rep.add(kind="embedding", mismatches=hom)
        return rep
    if co.name.startswith("psi") and co.name in ("psi", "psi1", "psi2"):
        if not isinstance(alg, KAlg) or alg.N != 4:
            raise DomainMismatch(f"{co.name} lives on K(4), got {alg.name}")
    if co.name.startswith("phi") and not isinstance(alg, (VirHAlg, VirAlg)):
        raise DomainMismatch(f"{co.name} lives on Vir x h[t], got {alg.name}")
    return cocycle_identity(co, alg, _window_keys(alg, window), name=f"cocycle {co.name} on {alg.name} [{lo},{hi}]")


# ---------------------------------------------------------------- central extensions

CENTRAL = "c"


class CentralExtension(AlgebraDef):
    """alg + C c with [x, y]^ = [x, y] + cocycle(x, y) c."""

    def __init__(self, base: AlgebraDef, co: Cocycle):
        super().__init__()
        self.base = base
        self.cocycle = co
        self.name = f"{base.name}+{co.name}"
        self.n_weights = base.n_weights

    def is_legal(self, k) -> bool:
        return k == CENTRAL or self.base.is_legal(k)

    def _bracket_keys(self, a, b):
        if a == CENTRAL or b == CENTRAL:
            return {}
        out = dict(self.base.bracket_keys(a, b))
        v = self.cocycle.on_keys(self.base, a, b)
        if v:
            out[CENTRAL] = v
        return out

    def parity(self, k):
        return 0 if k == CENTRAL else self.base.parity(k)

    def tdeg(self, k):
        return Fraction(0) if k == CENTRAL else self.base.tdeg(k)

    def weight(self, k):
        if k == CENTRAL:
            return tuple(Fraction(0) for _ in range(self.n_weights))
        return self.base.weight(k)

    def fdeg(self, k):
        return Fraction(0) if k == CENTRAL else self.base.fdeg(k)

    def basis(self, lo, hi):
        out = list(self.base.basis(lo, hi))
        if Fraction(lo) <= 0 <= Fraction(hi):
            out.append(CENTRAL)
        return out

    def key_str(self, k):
        return "c" if k == CENTRAL else self.base.key_str(k)

    def key_sort(self, k):
        return (Fraction(0), "~c") if k == CENTRAL else self.base.key_sort(k)

    def parse_name(self, name, tpow):
        if name == "c":
            if Fraction(tpow):
                raise IllegalKey("the central element has t-degree 0")
            return self.key(CENTRAL)
        return self.lift(self.base.parse_name(name, tpow))

    def lift(self, x: Elem) -> Elem:
        return Elem(self, x.terms, True)


def central_extend(alg: AlgebraDef, cocycle: Union[str, CocycleId, Cocycle]) -> CentralExtension:
    co = get_cocycle(cocycle)
    if not co.total:
        raise UnderdeterminedSlot(f"{co.name} is only printed on some slots; cannot extend {alg.name}")
    if isinstance(alg, VirAlg) and co.name != "phi3" and co.name.startswith("phi"):
        raise DomainMismatch(f"{co.name} vanishes on Vir")
    return CentralExtension(alg, co)


def _to_khat(x: Elem, KH: KHat4) -> Elem:
    """Image in Khat(4) of an element of central_extend(K(4), psi): c -> c(1), omega(t^n) -> c(t^n)/n."""
    out = Elem(KH, {}, True)
    for k, c in x.terms.items():
        if k == CENTRAL:
            out = out + KH.key((C_MASK, 0), c)
        else:
            out = out + khat_sigma(Elem(x.alg.base, {k: c}, True), KH)
    return out


def extension_identity_check(window, ns: bool = False, cocycle=CocycleId.psi) -> Report:
    """[sigma(x), sigma(y)] = sigma([x, y]) + psi(x, y) c, compared key by key with the piecewise Khat(4) bracket."""
    lo, hi = window
    K4 = KAlg(4, derived=True, ns=ns)
    KH = KHat4(ns=ns)
    ext = central_extend(K4, cocycle)
    keys = K4.basis(lo, hi)
    rep = Report(name=f"central_extend(K(4), {ext.cocycle.name}) vs Khat(4) [{lo},{hi}]")
    for a in keys:
        xa = _to_khat(ext.key(a), KH)
        for b in keys:
            rep.checked += 1
            lhs = KH.bracket(xa, _to_khat(ext.key(b), KH))
            rhs = _to_khat(ext.bracket(ext.key(a), ext.key(b)), KH)
            if lhs != rhs and len(rep.violations) < 50:
                rep.add(x=K4.key_str(a), y=K4.key_str(b), khat=repr(lhs), extended=repr(rhs))
    return rep


# ---------------------------------------------------------------- H^2 of Vir x h[t]

def h2_slot_matrix(window: int = 6) -> List[List[Fraction]]:
    """Rows phi1, phi2, phi3, d(E_0^*), d(h_0^*) on the balanced slots (h_n,h_-n), (E_n,h_-n), (E_n,E_-n)."""
    VH = VirHAlg()
    slots = []
    for n in range(-window, window + 1):
        slots += [(("h", n), ("h", -n)), (("E", n), ("h", -n)), (("E", n), ("E", -n))]

    def cob(target):
        return lambda alg, a, b: -dict(VH.bracket_keys(a, b)).get(target, Fraction(0))

    fns = [_phi(1), _phi(2), _phi(3), cob(("E", 0)), cob(("h", 0))]
    return [[f(VH, a, b) for a, b in slots] for f in fns]


def h2_rank(window: int = 6) -> int:
    return rank(h2_slot_matrix(window))


# ---------------------------------------------------------------- the exceptional cocycle

PRINTED = "printed"
DERIVED = "derived"
OMEGA = 15


@lru_cache(maxsize=None)
def khat_std(ns: bool = True) -> KHat4:
    """Khat(4) in the xi-basis, [xi_i, xi_j] = delta_ij; Tr(xi_1 xi_2 xi_3 xi_4) = 1."""
    return KHat4(ns=ns, kind=STD)


def _d_omega(idx: Sequence[int]) -> Tuple[int, int]:
    """d_{i_1} ... d_{i_k} omega, rightmost derivative first."""
    s, m = 1, OMEGA
    for i in reversed(idx):
        ss, m = mono_deriv(i, m)
        s *= ss
        if not s:
            return 0, 0
    return s, m


def _profile(k: int, n: Fraction) -> Fraction:
    """Polynomial in D applied to t^n: D^3 - D, D^2 - 1/4, D, 1 by Grassmann degree."""
    return (n ** 3 - n, n * n - Fraction(1, 4), n, Fraction(1))[k]


def _d_coeff(idx: Tuple[int, ...], normalization: str) -> Fraction:
    k = len(idx)
    if normalization == DERIVED:
        return Fraction(1, 2 ** (4 - k))
    if normalization != PRINTED:
        raise ValueError(f"unknown normalization {normalization!r}")
    if k == 0:
        return Fraction(2)
    if k == 1:
        return Fraction((-1) ** (idx[0] + 1))
    # 1-based signs (-1)^{i+j}; the degree-3 formula repeats d/dxi_j, read as d_i d_j d_k
    return Fraction(2 * (-1) ** (idx[0] + idx[1]))


def exceptional_D(x: Elem, normalization: str = PRINTED) -> Func:
    """The order-3 cocycle Khat(4) -> C[t^{1/2},1/t^{1/2},xi_1..xi_4], extended linearly.

    `printed` uses the displayed coefficients; `derived` uses 2^{k-4} on degree-k monomials,
    the unique normalization with D(c(f)) = f satisfying the cocycle identity.
    """
    alg = x.alg
    if not isinstance(alg, KHat4) or alg.kind != STD:
        raise DomainMismatch("exceptional_D is written in the xi-basis of Khat(4)")
    out: Func = {}
    for (m, t2), c in x.terms.items():
        if m == C_MASK:
            _acc(out, (0, t2), c)
            continue
        idx = tuple(i for i in range(4) if (m >> i) & 1)
        val = _profile(len(idx), Fraction(t2, 2))
        if not val:
            continue
        s, mm = _d_omega(idx)
        if s:
            _acc(out, (mm, t2), c * s * val * _d_coeff(idx, normalization))
    return out


def khat_pi_func(x: Elem) -> Func:
    """pi: Khat(4) -> K(4;D) as a superfunction, c(f) -> omega(Df)."""
    out: Func = {}
    for (m, t2), c in x.terms.items():
        if m == C_MASK:
            if t2:
                _acc(out, (OMEGA, t2), c * Fraction(t2, 2))
        else:
            _acc(out, (m, t2), c)
    return out


def khat_module_act(x: Elem, F: Func) -> Func:
    """x . F = nabla(pi(x)) F: first-order action of Khat(4) on superfunctions."""
    f = khat_pi_func(x)
    if not f:
        return {}
    return apply_field(contact_field(f, 4, x.alg.kind), F)


def k_basis(KH: Optional[KHat4] = None) -> List[Key]:
    """Basis of the osp(4,2) subalgebra: 1, t^{+-1}, xi_i(t^{+-1/2}), xi_i xi_j."""
    KH = KH or khat_std(True)
    out = [(0, 0), (0, 2), (0, -2)]
    out += [(1 << i, s) for i in range(4) for s in (1, -1)]
    out += [((1 << i) | (1 << j), 0) for i, j in itertools.combinations(range(4), 2)]
    return out


def _d_residual(KH, a, b, Dfn) -> Func:
    x, y = KH.key(a), KH.key(b)
    s = supercomm_sign(KH.parity(a), KH.parity(b))
    lhs = Dfn(KH.bracket(x, y))
    rhs = fadd(khat_module_act(x, Dfn(y)), fscale(khat_module_act(y, Dfn(x)), -s))
    return fadd(lhs, fscale(rhs, -1))


def d_cocycle_check(window, normalization: str = DERIVED,
                    Dfn: Optional[Callable[[Elem], Func]] = None, max_violations: int = 50) -> Report:
    """D[x,y] = x.D(y) - (-1)^{|x||y|} y.D(x) on NS Khat(4) pairs, plus k-invariance."""
    lo, hi = window
    KH = khat_std(True)
    Dfn = Dfn or (lambda x: exceptional_D(x, normalization))
    rep = Report(name=f"exceptional cocycle ({normalization}) [{lo},{hi}]")
    keys = KH.basis(lo, hi)
    for a in keys:
        for b in keys:
            rep.checked += 1
            r = _d_residual(KH, a, b, Dfn)
            if r and len(rep.violations) < max_violations:
                rep.add(x=KH.key_str(a), y=KH.key_str(b), residual=fstr(STD, 4, r))
    kb = k_basis(KH)
    # k is a subalgebra of dimension 17 = dim osp(4,2)
    span = set(kb)
    for a in kb:
        for b in kb:
            for k, _ in KH.bracket_keys(a, b):
                if k not in span:
                    rep.add(kind="k-closure", x=KH.key_str(a), y=KH.key_str(b), out=KH.key_str(k))
    for a in kb:
        rep.checked += 1
        v = Dfn(KH.key(a))
        if v:
            rep.add(kind="k-invariance", x=KH.key_str(a), value=fstr(STD, 4, v))
        for b in keys:
            rep.checked += 1
            r = _d_residual(KH, a, b, Dfn)
            if r and len(rep.violations) < max_violations:
                rep.add(kind="k-equivariance", x=KH.key_str(a), y=KH.key_str(b), residual=fstr(STD, 4, r))
    rep.notes.append(f"k basis of size {len(kb)} closed under the bracket")
    return rep
