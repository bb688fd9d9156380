"""Locality orders of all generator pairs, and the Maurer-Cartan relations."""
import argparse

from superconf import locality as L


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--window", type=int, default=8)
    ap.add_argument("--maxN", type=int, default=4)
    ap.add_argument("--algs", nargs="*", default=["K:4", "Khat:4", "W:2", "K2:4"])
    ap.add_argument("--mc-bound", type=int, default=6)
    args = ap.parse_args()
    for a in args.algs:
        rep = L.generator_report(a, (-args.window, args.window), args.maxN)
        print(f"{a:8s} {'ok  ' if rep.ok else 'FAIL'} {rep.checked} pairs; " + "; ".join(rep.notes[:1]))
        for v in rep.violations:
            print("        ", v)
    for rep in (L.mc_jacobi(args.mc_bound), L.mc_relations(args.mc_bound)):
        print(f"{rep.name}: {'ok' if rep.ok else 'FAIL'} ({rep.checked} checks)")


if __name__ == "__main__":
    main()
