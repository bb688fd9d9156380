"""Command-line front end: brackets, audits, cocycles, modules, classification, locality, Jordan tables."""
from __future__ import annotations

import csv
import itertools
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import click

from . import classify as C
from . import cohomology as H
from . import jordan as J
from . import locality as L
from . import repmod as R
from .algebras import (KAlg, KHat4, CK6Alg, ParseError, make_algebra, nabla_check, parse_algebra_id, parse_element,
                       pfaffian_check, sigma_check)
from .grassmann import SPLIT
from .liecore import FaultyAlgebra, Report, jacobi_check
from .scalar import rat

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    alg: str = ""
    window: int = 2
    seed: int = 0
    output: Optional[Path] = None

    def __post_init__(self):
        if self.window < 1:
            raise click.UsageError("--window must be >= 1")

    @property
    def interval(self):
        return (-self.window, self.window)


def _emit(cfg: RunConfig, payload, text: Optional[str] = None):
    if cfg.output:
        cfg.output.write_text(json.dumps(payload, indent=2, default=str))
    click.echo(text if text is not None else json.dumps(payload, indent=2, default=str))


def _reports_exit(cfg: RunConfig, reports: Dict[str, Report]) -> int:
    payload = {k: r.to_json() for k, r in reports.items()}
    lines = [f"{'ok  ' if r.ok else 'FAIL'} {k}: checked {r.checked}, violations {len(r.violations)}"
             for k, r in reports.items()]
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if all(r.ok for r in reports.values()) else EXIT_VIOLATION


def _alg(spec: str):
    try:
        return make_algebra(parse_algebra_id(spec))
    except (ValueError, IndexError) as e:
        raise click.BadParameter(f"{spec!r}: {e}", param_hint="--alg")


def _q(s: str) -> Fraction:
    try:
        return rat(Fraction(s))
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"not a rational number: {s!r}")


def _qlist(s: str) -> List[Fraction]:
    return [_q(x) for x in s.split(",") if x.strip()] if s else []


def _cfg(ctx, window=None, seed=None, output=None, alg="") -> RunConfig:
    base = ctx.obj or {}
    return RunConfig(alg, window if window is not None else base.get("window", 2),
                     seed if seed is not None else base.get("seed", 0),
                     Path(output) if output else base.get("output"))


def common(f):
    f = click.option("--json", "output", type=click.Path(dir_okay=False), help="Write the JSON payload here.")(f)
    f = click.option("--seed", type=int, default=None, help="Seed for rational sampling.")(f)
    f = click.option("--window", type=int, default=None, help="Half-width W of the t-degree window [-W, W].")(f)
    return f


@click.group()
@click.option("--window", type=int, default=2, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--json", "output", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def main(ctx, window, seed, output):
    """Exact computations on superconformal Lie superalgebras."""
    ctx.obj = {"window": window, "seed": seed, "output": Path(output) if output else None}


# ---------------------------------------------------------------- bracket

@main.command()
@click.option("--alg", "alg_id", required=True, help="Algebra id, e.g. K:4, Khat:4, W:2, S:2:g=1/3, CK6, Vir.")
@click.argument("x")
@click.argument("y")
@common
@click.pass_context
def bracket(ctx, alg_id, x, y, window, seed, output):
    """Bracket of two elements written as p/q*name@tpow terms."""
    cfg = _cfg(ctx, window, seed, output, alg_id)
    alg = _alg(alg_id)
    try:
        ex, ey = parse_element(alg, x), parse_element(alg, y)
    except ParseError as e:
        click.echo(f"parse error: {e}", err=True)
        ctx.exit(EXIT_USAGE)
    r = alg.bracket(ex, ey)
    _emit(cfg, {"algebra": alg.name, "x": x, "y": y, "bracket": r.to_json()}, repr(r))


# ---------------------------------------------------------------- audit

def audit_reports(alg_id: str, window, fault: bool = False) -> Dict[str, Report]:
    alg = _alg(alg_id)
    target = FaultyAlgebra(alg) if fault else alg
    out = {"jacobi": jacobi_check(target, window)}
    if isinstance(alg, KAlg) and not alg.ns and alg.kind == SPLIT and alg.N >= 3:
        out["nabla"] = nabla_check(alg, window)
    if isinstance(alg, (KAlg, KHat4)) and not alg.ns and alg.N % 2 == 0:
        out["sigma"] = sigma_check(alg, window)
    if isinstance(alg, KHat4) and not alg.ns:
        out["extension identity"] = H.extension_identity_check(window)
    if isinstance(alg, CK6Alg):
        out["pfaffian"] = pfaffian_check()
        out["centralizer closure"] = J.centralizer_closure(window)
    return out


@main.command()
@click.option("--alg", "alg_id", required=True)
@click.option("--fault", is_flag=True, hidden=True, help="Test hook: corrupt the structure constants.")
@common
@click.pass_context
def audit(ctx, alg_id, fault, window, seed, output):
    """Jacobi identity plus family-specific structural checks; exit 1 on any violation."""
    cfg = _cfg(ctx, window, seed, output, alg_id)
    ctx.exit(_reports_exit(cfg, audit_reports(alg_id, cfg.interval, fault)))


# ---------------------------------------------------------------- cocycle

@main.command()
@click.argument("action", type=click.Choice(["check"]), default="check", required=False)
@click.option("--alg", "alg_id", default=None, help="Domain algebra; defaults to the cocycle's own.")
@click.option("--id", "cid", required=True, type=click.Choice([c.value for c in H.CocycleId] + ["D"]))
@click.option("--normalization", type=click.Choice([H.PRINTED, H.DERIVED]), default=H.PRINTED, show_default=True)
@common
@click.pass_context
def cocycle(ctx, action, alg_id, cid, normalization, window, seed, output):
    """Cocycle identity on a window (D is the exceptional Khat(4)-module cocycle)."""
    cfg = _cfg(ctx, window, seed, output, alg_id or "")
    if cid == "D":
        ctx.exit(_reports_exit(cfg, {f"D ({normalization})": H.d_cocycle_check(cfg.interval, normalization)}))
    default = {"K(4)": "K:4", "W(2)": "W:2", "W(1)": "W:1", "VirH": "VirH"}[H.get_cocycle(cid).domain]
    alg = _alg(alg_id or default)
    try:
        rep = H.cocycle_check(cid, alg, cfg.interval)
    except H.DomainMismatch as e:
        raise click.UsageError(str(e))
    ctx.exit(_reports_exit(cfg, {cid: rep}))


# ---------------------------------------------------------------- module

def parse_word(alg, text: str, hw_mode="0", hw_xi: bool = False) -> R.ModeWord:
    """Comma-separated factors in the element grammar; the rightmost acts first."""
    return R.ModeWord([parse_element(alg, f) for f in text.split(",") if f.strip()], _q(hw_mode), hw_xi)


@main.command()
@click.argument("action", type=click.Choice(["check", "act"]), default="check", required=False)
@click.option("--alg", "alg_id", default=None, help="Algebra for 'act'.")
@click.option("--word", default=None, help="For 'act': factors like 'zeta1@1,eta1@-1'.")
@click.option("--lambda", "lam", default="", help="For 'act': highest weight, comma separated.")
@click.option("--delta", "delta_", default="0")
@click.option("--u", "u_", default="0")
@click.option("--hw-mode", default="0", help="For 'act': the mode of the highest vector v(t^m).")
@click.option("--xi", "hw_xi", is_flag=True, help="For 'act': act on xi v instead of v.")
@click.option("--lemma", "lemma_id", default=None, help="Catalogued identity, e.g. formulasK4.e.")
@click.option("--normalization", type=click.Choice([R.PRINTED, R.DERIVED]), default=R.PRINTED, show_default=True)
@click.option("--draws", type=int, default=3, show_default=True)
@click.option("--ck6", is_flag=True, help="Check the CK(6) defining module instead.")
@click.option("--list", "list_", is_flag=True, help="List catalogued identities.")
@common
@click.pass_context
def module(ctx, action, alg_id, word, lam, delta_, u_, hw_mode, hw_xi, lemma_id, normalization, draws, ck6, list_,
           window, seed, output):
    """Highest-weight identities against closed forms, word evaluation, or the CK(6) defining module."""
    cfg = _cfg(ctx, window, seed, output, alg_id or "")
    if action == "act":
        if not (alg_id and word):
            raise click.UsageError("'module act' needs --alg and --word")
        alg = _alg(alg_id)
        try:
            w = parse_word(alg, word, hw_mode, hw_xi)
            p = R.TensParams(tuple(_qlist(lam)), _q(delta_), _q(u_))
            v = R.act_on_highest_weight(alg, w, p)
        except (ParseError, R.NonHomogeneousFactor) as e:
            click.echo(f"parse error: {e}", err=True)
            ctx.exit(EXIT_USAGE)
        except (R.WeightImbalance, R.OutOfSubalgebra) as e:
            raise click.UsageError(str(e))
        basis = [{"tpow": str(Fraction(t2, 2)), "xi": x} for (t2, x) in sorted(v.terms)]
        coeff = [str(v.terms[k]) for k in sorted(v.terms)]
        _emit(cfg, {"algebra": alg.name, "word": word, "params": p.to_json(), "coeff": coeff, "basis": basis},
              repr(v))
        return
    if list_:
        _emit(cfg, {k: v.family for k, v in R.CATALOG.items()},
              "\n".join(f"{k}  on {v.family}" for k, v in R.CATALOG.items()))
        return
    if ck6:
        ctx.exit(_reports_exit(cfg, {"CK(6) module": R.ck6_check(cfg.interval)}))
    if not lemma_id:
        raise click.UsageError("give --lemma ID, --ck6 or --list")
    try:
        lem = R.get_lemma(lemma_id)
    except R.UnknownLemma:
        raise click.UsageError(f"unknown lemma {lemma_id!r}")
    alg = _alg(lem.family)
    params = R.random_params(lem.n_lam, draws, cfg.seed)
    ctx.exit(_reports_exit(cfg, {lemma_id: R.lemma_check(alg, lemma_id, params, normalization=normalization)}))


# ---------------------------------------------------------------- classify

def sweep_rows(family: str, lams: Sequence[Sequence[Fraction]], deltas: Sequence[Fraction], us: Sequence[Fraction],
               oracle: bool = True) -> List[dict]:
    rows = []
    for lam, d, u in itertools.product(lams, deltas, us):
        row = {"family": family, "lambda": ",".join(str(x) for x in lam), "delta": str(d), "u": str(u)}
        try:
            v = C.cuspidal_predicate(family, lam, d, u)
        except C.NotDominant as e:
            row.update(cuspidal="", rule=f"not dominant: {e}", oracle="", agree="")
            rows.append(row)
            continue
        row.update(cuspidal=v.cuspidal, rule=v.rule_fired)
        if oracle and C.catalog_for(family) and C.coroot_values(family, lam)[0] == 1:
            o = C.vanishing_criterion(family, lam, d, u)
            row.update(oracle=o, agree=(o == v.cuspidal))
        else:
            row.update(oracle="", agree="")
        rows.append(row)
    return rows


@main.command()
@click.option("--family", "--alg", "family", required=True)
@click.option("--lam", "--lambda", "lam", default=None, help="One weight, comma separated, e.g. 1,1/2.")
@click.option("--lam-grid", default=None, help="Weights separated by ';', e.g. '1,0;1,1/2'.")
@click.option("--delta", "delta_", default="0", help="Comma-separated delta values.")
@click.option("--u", "u_", default="0", help="Comma-separated u values.")
@click.option("--no-oracle", is_flag=True)
@click.option("--csv", "csv_out", type=click.Path(dir_okay=False), default=None)
@common
@click.pass_context
def classify(ctx, family, lam, lam_grid, delta_, u_, no_oracle, csv_out, window, seed, output):
    """Cuspidality verdicts with the theorem clause that fired and the oracle agreement column."""
    cfg = _cfg(ctx, window, seed, output, family)
    try:
        parse_algebra_id(family)
    except (ValueError, IndexError) as e:
        raise click.BadParameter(str(e), param_hint="--family")
    specs = [s for s in (lam_grid or lam or "").split(";") if s.strip()]
    lams = [_qlist(s) for s in specs]
    rows = sweep_rows(family, lams, _qlist(delta_), _qlist(u_), oracle=not no_oracle) if lams else []
    if csv_out:
        with open(csv_out, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=["family", "lambda", "delta", "u", "cuspidal", "rule", "oracle", "agree"])
            w.writeheader()
            w.writerows(rows)
    text = "\n".join(f"lambda=({r['lambda']}) delta={r['delta']} u={r['u']}: cuspidal={r['cuspidal']} "
                     f"[{r['rule']}]" + (f" oracle={r['oracle']}" if r["oracle"] != "" else "") for r in rows)
    _emit(cfg, {"rows": rows}, text or "empty grid")
    ctx.exit(EXIT_VIOLATION if any(r["agree"] is False for r in rows) else EXIT_OK)


# ---------------------------------------------------------------- locality

@main.command()
@click.option("--alg", "alg_id", required=True)
@click.option("--a", "a_root", default=None)
@click.option("--b", "b_root", default=None)
@click.option("--maxN", "max_n", type=int, default=4, show_default=True)
@click.option("--semi", is_flag=True, help="Use (z1^2 - z2^2); automatic for K2 algebras.")
@click.option("--all", "all_pairs", is_flag=True, help="All pairs of generator families.")
@common
@click.pass_context
def locality(ctx, alg_id, a_root, b_root, max_n, semi, all_pairs, window, seed, output):
    """Windowed locality or semi-locality order of mode distributions."""
    cfg = _cfg(ctx, window if window is not None else 8, seed, output, alg_id)
    try:
        if all_pairs:
            ctx.exit(_reports_exit(cfg, {alg_id: L.generator_report(alg_id, cfg.interval, max_n)}))
        if not (a_root and b_root):
            raise click.UsageError("give --a and --b, or --all")
        alg = _alg(alg_id)
        semi = semi or alg_id.startswith("K2")
        fa, fb = L.family(alg, a_root), L.family(alg, b_root)
        fn = L.semilocality_order if semi else L.locality_order
        n = fn(fa, fb, cfg.interval, max_n)
    except L.WindowTooSmall as e:
        raise click.UsageError(str(e))
    except ValueError as e:
        click.echo(f"parse error: {e}", err=True)
        ctx.exit(EXIT_USAGE)
    payload = {"algebra": alg.name, "a": a_root, "b": b_root, "rules": [fa.rule.value, fb.rule.value],
               "semi": semi, "order": n, "window": list(cfg.interval),
               "note": "windowed check: each coefficient is verified where all its modes lie in the window"}
    _emit(cfg, payload, f"{'semi-' if semi else ''}locality order of ({a_root}, {b_root}): "
                        f"{n if n is not None else f'> {max_n}'}")
    ctx.exit(EXIT_OK if n is not None else EXIT_VIOLATION)


# ---------------------------------------------------------------- jordan

@main.group()
def jordan():
    """Jordan superalgebras of K(4) and of the centralizer of c in CK(6)."""


@jordan.command("table")
@click.option("--alg", "alg_id", type=click.Choice(["CK6", "K:4"]), required=True)
@click.option("--center", default="c", help="Only the centralizer of c is supported for CK6.")
@common
@click.pass_context
def jordan_table(ctx, alg_id, center, window, seed, output):
    """Compute the multiplication table from a o b = [a, [f, b]] / 2."""
    cfg = _cfg(ctx, window, seed, output, alg_id)
    if center != "c":
        raise click.UsageError("only --center c is supported")
    st = J.ck6_setup() if alg_id == "CK6" else J.k4_setup()
    tab = J.jor_table(st.triple, st.families, range(-cfg.window - 1, cfg.window + 2))
    _emit(cfg, tab.to_json(), tab.render())


@jordan.command("compare")
@common
@click.pass_context
def jordan_compare(ctx, window, seed, output):
    """Compare computed tables with each other and with the printed ones."""
    cfg = _cfg(ctx, window, seed, output)
    cert = J.jordan_certificate()
    ctx.exit(_reports_exit(cfg, cert.reports))


# ---------------------------------------------------------------- export

@main.command()
@click.option("--what", type=click.Choice(["jordan", "lemmas", "charges", "mc"]), required=True)
@common
@click.pass_context
def export(ctx, what, window, seed, output):
    """Export derived tables as JSON."""
    cfg = _cfg(ctx, window, seed, output)
    if what == "jordan":
        payload = J.jordan_certificate().to_json()
    elif what == "lemmas":
        payload = {}
        for lid, lem in R.CATALOG.items():
            p = R.random_params(lem.n_lam, 1, cfg.seed)[0]
            payload[lid] = {"family": lem.family, "factors": list(lem.factors), "params": p.to_json(),
                            "printed": repr(R.closed_form(lid, p, R.PRINTED)),
                            "derived": repr(R.closed_form(lid, p, R.DERIVED))}
    elif what == "charges":
        payload = {f"{a} / {c}": r.value for (a, c), r in C._CHARGE.items()}
    else:
        payload = {str(n): {str(k): str(v) for k, v in sorted(L.mc_delta(n).items())}
                   for n in range(-6, 7) if n}
    _emit(cfg, payload)


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        rc = main.main(args=list(argv) if argv is not None else None, standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.exceptions.Abort:
        return EXIT_USAGE
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    return rc if isinstance(rc, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(run())
