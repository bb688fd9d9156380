"""Cuspidality predicates for highest-weight modules, with the word oracle as arbiter."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebras import AlgebraId, KAlg, KHat4, SAlg, WAlg, make_algebra, parse_algebra_id
from .repmod import (CATALOG, TensParams, eps1_block, gram_rank, instantiate, lemma_value)
from .scalar import rat

Lam = Sequence[Union[int, Fraction]]
HALF = Fraction(1, 2)


class NotDominant(ValueError):
    pass


class UnknownPair(KeyError):
    pass


class Kind(str, enum.Enum):
    First = "First"
    Second = "Second"


class ChargeRule(str, enum.Enum):
    ForbidsCuspidal = "ForbidsCuspidal"
    ZeroChargeOnly = "ZeroChargeOnly"
    ArbitraryCharge = "ArbitraryCharge"


@dataclass
class CuspidalVerdict:
    cuspidal: bool
    rule_fired: str
    caveats: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"cuspidal": self.cuspidal, "rule": self.rule_fired, "caveats": list(self.caveats)}


def _aid(family) -> AlgebraId:
    return family if isinstance(family, AlgebraId) else parse_algebra_id(family)


def _nat(x: Fraction) -> bool:
    return x.denominator == 1 and x >= 0


def coroot_values(family, lam: Lam) -> Tuple[Fraction, ...]:
    """lambda(h_1), ..., lambda(h_r) for the family's simple coroots.

    W(n): lam_i = lambda(xi_i d_i), h_i = xi_i d_i - xi_{i+1} d_{i+1}.
    S(n;g): lam is already (lambda(h_1), ..., lambda(h_{n-1})).
    K(2m), Khat(4): h_1 = zeta_1 eta_1 + zeta_2 eta_2, h_i = zeta_i eta_i - zeta_{i-1} eta_{i-1}.
    K(2m+1): h_1 = 2 zeta_1 eta_1, then as above.
    CK(6): lam = (lam_1, lam_2, lam_3) with h_1 = e1+e2, h_2 = e2-e1, h_3 = e3-e2 as coroots.
    """
    a = _aid(family)
    lam = tuple(rat(x) for x in lam)
    f = a.family
    if f == "W":
        if len(lam) != a.n:
            raise ValueError(f"W({a.n}) takes {a.n} weights")
        return tuple(lam[i] - lam[i + 1] for i in range(a.n - 1))
    if f == "S":
        if len(lam) != a.n - 1:
            raise ValueError(f"S({a.n}) takes {a.n - 1} weights")
        return lam
    if f == "Khat":
        if len(lam) != 3:
            raise ValueError("Khat(4) takes (lambda_1, lambda_2, lambda_c)")
        return (lam[0] + lam[1], lam[1] - lam[0])
    if f in ("K", "KD"):
        m = a.n // 2
        if len(lam) != m:
            raise ValueError(f"K({a.n}) takes {m} weights")
        if a.n % 2 == 0:
            head = (lam[0] + lam[1],) if m >= 2 else (lam[0],)
        else:
            head = (2 * lam[0],)
        return head + tuple(lam[i] - lam[i - 1] for i in range(1, m))
    if f == "CK6":
        if len(lam) != 3:
            raise ValueError("CK(6) takes (lambda_1, lambda_2, lambda_3)")
        return (lam[0] + lam[1], lam[1] - lam[0], lam[2] - lam[1])
    raise UnknownPair(f"no highest-weight theory for {a}")


def dominant(family, lam: Lam) -> bool:
    """All lambda(h_i) are nonnegative integers."""
    return all(_nat(x) for x in coroot_values(family, lam))


def ck6_to_khat(lam: Lam) -> Tuple[Fraction, Fraction, Fraction]:
    """Restriction to Khat(4) inside CK(6): (lam_1, lam_2, lambda(c)) with c = h_1 + h_2 + 2 h_3."""
    h = coroot_values("CK6", lam)
    return rat(lam[0]), rat(lam[1]), h[0] + h[1] + 2 * h[2]


def cuspidal_predicate(family, lam: Lam, delta, u=0) -> CuspidalVerdict:
    """Transcription of the classification clauses; u never enters."""
    a = _aid(family)
    lam = tuple(rat(x) for x in lam)
    delta = rat(delta)
    if not dominant(a, lam):
        raise NotDominant(f"{lam} is not dominant for {a}")
    if not any(lam):
        raise NotDominant("lambda = 0 is excluded")
    h1 = coroot_values(a, lam)[0]
    f = a.family
    if f == "W":
        if h1 >= 2:
            return CuspidalVerdict(True, "W(n)(a): lambda(h1) >= 2")
        if h1 == 1 and lam[0] == 1 - delta:
            return CuspidalVerdict(True, "W(n)(b): lambda(h1) = 1 and lambda_1 = 1 - delta")
        return CuspidalVerdict(False, "W(n): neither (a) nor (b)")
    if f == "S":
        if h1 >= 2:
            return CuspidalVerdict(True, "S(n;g)(a): lambda(h1) >= 2")
        if h1 == 1 and delta == 1:
            return CuspidalVerdict(True, "S(n;g)(b): lambda(h1) = 1 and delta = 1")
        return CuspidalVerdict(False, "S(n;g): neither (a) nor (b)")
    if f == "Khat":
        l1, l2, lc = lam
        cav = ["the small-weight corollary pairs lambda_c = 2 lambda_2 with delta = 1 - lambda_1/2; "
               "the word oracle sides with the clauses used here"]
        if h1 >= 2:
            return CuspidalVerdict(True, "Khat(4)(a): lambda_1 + lambda_2 >= 2")
        if h1 == 1 and delta == (1 - l2) / 2 and lc == 2 * l2:
            return CuspidalVerdict(True, "Khat(4)(b): lambda_1 + lambda_2 = 1, delta = (1 - lambda_2)/2, "
                                         "lambda_c = 2 lambda_2", cav)
        if h1 == 1 and delta == (1 + l2) / 2 and lc == -2 * l2:
            return CuspidalVerdict(True, "Khat(4)(c): lambda_1 + lambda_2 = 1, delta = (1 + lambda_2)/2, "
                                         "lambda_c = -2 lambda_2", cav)
        return CuspidalVerdict(False, "Khat(4): none of (a), (b), (c)", cav if h1 == 1 else [])
    if f in ("K", "KD"):
        N = a.n
        if N == 3:
            cav = ["the K(3) clause prints lambda(h1) = 1 = 1/2; read as lambda_1 = 1/2"]
            if lam[0] >= 1:
                return CuspidalVerdict(True, "K(3)(a): lambda_1 >= 1")
            if lam[0] == HALF and delta == Fraction(1, 4):
                return CuspidalVerdict(True, "K(3)(b): lambda_1 = 1/2 and delta = 1/4", cav)
            return CuspidalVerdict(False, "K(3): neither (a) nor (b)", cav)
        if N % 2 == 0 and N >= 4:
            if h1 >= 2:
                return CuspidalVerdict(True, "K(2m): lambda_1 + lambda_2 >= 2")
            return CuspidalVerdict(False, "K(2m): lambda(h1) < 2")
        if N % 2 == 1 and N >= 5:
            if lam[0] >= 1:
                return CuspidalVerdict(True, "K(2m+1): lambda_1 >= 1")
            return CuspidalVerdict(False, "K(2m+1): lambda_1 < 1")
        raise UnknownPair(f"no classification clause for {a}")
    if f == "CK6":
        hs = coroot_values(a, lam)
        if hs[0] >= 2:
            return CuspidalVerdict(True, "CK(6)(a): lambda(h1) >= 2")
        if hs[0] == 1 and hs[2] == 0 and delta == lam[0] / 2:
            return CuspidalVerdict(True, "CK(6)(b): lambda(h1) = 1, lambda(h3) = 0, delta = lambda_1/2")
        return CuspidalVerdict(False, "CK(6): neither (a) nor (b)")
    raise UnknownPair(f"no classification clause for {a}")


# ---------------------------------------------------------------- oracle side

def catalog_for(family) -> List[str]:
    """Identity lemmas whose words make sense in the family."""
    a = _aid(family)
    if a.ns:
        return []
    if a.family == "W" and a.n >= 2:
        return ["formulaW.a", "formulaW.b", "formulaW.c"]
    if a.family == "S" and a.n >= 2:
        return ["formulaS"]
    if a.family == "Khat":
        return [k for k in CATALOG if k.startswith("formulasK4.")]
    if a.family == "K" and a.n == 3:
        return ["formulasK3.a", "formulasK3.b"]
    return []


VANISH_GRID = (0, 1, 2)  # every lemma is of degree <= 2 in each mode


def _oracle_params(a: AlgebraId, lam, delta, u) -> TensParams:
    return TensParams(tuple(rat(x) for x in lam), delta, u)


def vanishing_criterion(family, lam: Lam, delta, u=0, grid: Sequence[int] = VANISH_GRID) -> bool:
    """All catalogued weight (lambda - 2 eps_1) words vanish on v, decided by the word oracle."""
    a = _aid(family)
    ids = catalog_for(a)
    if not ids:
        raise UnknownPair(f"no identity catalog for {a}")
    if not any(rat(x) for x in lam):
        raise NotDominant("lambda = 0 is excluded")
    alg = make_algebra(a)
    p = _oracle_params(a, lam, rat(delta), rat(u))
    for lid in ids:
        for modes in itertools.product(grid, repeat=5):
            if lemma_value(alg, lid, modes, p):
                return False
    return True


def eps1_gram(family, lam: Lam, delta, u=0, window: Tuple[int, int] = (-1, 1)) -> int:
    """Gram rank of the (eps_1)^2 x (-eps_1)^2 block at v(t^0)."""
    a = _aid(family)
    alg = make_algebra(a)
    p = _oracle_params(a, lam, rat(delta), rat(u))
    modes = list(range(window[0], window[1] + 1))
    if isinstance(alg, (KHat4, KAlg)):
        up, down = eps1_block(alg, window)
    elif isinstance(alg, SAlg):
        up, down = instantiate(alg, [("A", "A")], modes), instantiate(alg, [("d1", "d1")], modes)
    elif isinstance(alg, WAlg):
        ups = list(itertools.product(("xi1D", "xi1xi2d2"), repeat=2))
        up, down = instantiate(alg, ups, modes), instantiate(alg, [("d1", "d1")], modes)
    else:
        raise UnknownPair(f"no eps_1 block for {a}")
    return gram_rank(alg, p, up, down)


# ---------------------------------------------------------------- first / second kind, central charge

def kind_predicate(m: int, lam: Lam, delta=0, u=0, lam_c=None) -> Kind:
    """Second kind iff lambda_1 = 1 (m >= 3); for m = 2 (Khat(4)) also (lambda_c, delta) != (+-2 lambda_2, 1/2)."""
    lam = tuple(rat(x) for x in lam)
    delta = rat(delta)
    if m >= 3:
        return Kind.Second if lam[0] == 1 else Kind.First
    if m == 2:
        if lam_c is not None:
            lam = lam[:2] + (rat(lam_c),)
        if len(lam) != 3:
            raise ValueError("Khat(4) needs (lambda_1, lambda_2, lambda_c)")
        l1, l2, lc = lam
        if l1 == 1 and not (delta == HALF and lc in (2 * l2, -2 * l2)):
            return Kind.Second
        return Kind.First
    raise ValueError("kind is defined for m >= 2")


def khat_dual(lam: Lam, delta, u) -> Tuple[Tuple[Fraction, ...], Fraction, Fraction]:
    """Graded dual on Khat(4) highest-weight data: lambda_c -> -lambda_c, delta -> 1 - delta, u -> -u."""
    l1, l2, lc = (rat(x) for x in lam)
    return (l1, l2, -lc), 1 - rat(delta), -rat(u)


_CHARGE: Dict[Tuple[str, str], ChargeRule] = {
    ("K:4", "psi"): ChargeRule.ArbitraryCharge,
    ("K:4", "psi1"): ChargeRule.ZeroChargeOnly,
    ("K:4", "psi2"): ChargeRule.ZeroChargeOnly,
    ("K:3", "psi1"): ChargeRule.ForbidsCuspidal,
    ("K:3", "psi2"): ChargeRule.ForbidsCuspidal,
    ("K:3", "psi"): ChargeRule.ForbidsCuspidal,
    ("W:2", "psi3"): ChargeRule.ForbidsCuspidal,
    ("W:1", "psi4"): ChargeRule.ForbidsCuspidal,
    ("Vir", "phi3"): ChargeRule.ForbidsCuspidal,
}


def central_charge_rule(family, cocycle: str) -> ChargeRule:
    """Which central charges cuspidal modules of the extension by `cocycle` may carry."""
    a = _aid(family)
    key = str(a)
    if a.family == "S":
        key = "S"
    cid = str(getattr(cocycle, "value", cocycle))
    if key == "S" and cid == "psi3" and a.n == 2:
        return ChargeRule.ForbidsCuspidal
    try:
        return _CHARGE[(key, cid)]
    except KeyError:
        raise UnknownPair(f"({a}, {cid}) is not in the cocycle catalog")
