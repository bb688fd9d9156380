"""Word oracle vs closed forms for every catalogued identity, printed and derived signs."""
import argparse

from superconf import repmod as R
from superconf.algebras import make_algebra


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--draws", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--grid", default="-1,0,1,2", help="mode values, comma separated")
    ap.add_argument("--only", nargs="*", default=None, help="identity ids, default all")
    args = ap.parse_args()
    grid = [int(x) for x in args.grid.split(",")]
    for lid in args.only or list(R.CATALOG):
        lem = R.get_lemma(lid)
        alg = make_algebra(lem.family)
        params = R.random_params(lem.n_lam, args.draws, args.seed)
        rows = [(R.PRINTED, R.lemma_check(alg, lid, params, grid, R.PRINTED))]
        if lem.derived is not None:
            rows.append((R.DERIVED, R.lemma_check(alg, lid, params, grid, R.DERIVED)))
        for norm, rep in rows:
            print(f"{lid:14s} {norm:8s} {'ok  ' if rep.ok else 'FAIL'} {rep.checked:6d} points, "
                  f"{len(rep.violations)} mismatches")
        bad = rows[0][1].violations
        if bad:
            v = bad[0]
            print(f"{'':14s} first mismatch at modes {v['modes']}: oracle {v['oracle']}, closed form {v['closed']}")


if __name__ == "__main__":
    main()
