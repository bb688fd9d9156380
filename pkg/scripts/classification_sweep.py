"""Cuspidality sweeps with the word-oracle agreement column, written as CSV."""
import argparse
import csv
import itertools
from fractions import Fraction as Q

from superconf.cli import sweep_rows

h = Q(1, 2)


def khat_grid():
    lams = [(1 - l2, l2, s * 2 * l2) for l2 in (h, Q(1), Q(3, 2)) for s in (1, -1)]
    deltas = sorted({(1 - l2) / 2 for l2 in (h, Q(1), Q(3, 2))} | {(1 + l2) / 2 for l2 in (h, Q(1), Q(3, 2))}
                    | {Q(1, 3)})
    return "Khat:4", lams, deltas


def w2_grid():
    ds = [Q(-1), Q(-1, 3), Q(0), h, Q(2, 3)]
    lams = [(1 - d, -d) for d in ds]
    return "W:2", lams, ds


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="classification_sweep.csv")
    ap.add_argument("--no-oracle", action="store_true")
    args = ap.parse_args()
    rows = []
    for fam, lams, deltas in (khat_grid(), w2_grid()):
        rows += sweep_rows(fam, lams, deltas, [Q(0)], oracle=not args.no_oracle)
    with open(args.out, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)
    cusp = sum(1 for r in rows if r["cuspidal"] is True)
    dis = [r for r in rows if r["agree"] is False]
    print(f"{len(rows)} rows, {cusp} cuspidal, {len(dis)} oracle disagreements -> {args.out}")
    for r in itertools.islice((r for r in rows if r["cuspidal"] is True), 12):
        print(f"  {r['family']:7s} lambda=({r['lambda']}) delta={r['delta']}: {r['rule']}")


if __name__ == "__main__":
    main()
