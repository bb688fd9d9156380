"""Jordan multiplication tables of K(4) and of the centralizer of c in CK(6), and their comparison."""
import argparse
import json

from superconf import jordan as J


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=3, help="sample modes in [-grid, grid] for the fits")
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    cert = J.jordan_certificate(range(-args.grid, args.grid + 1))
    print("computed, CK(6):")
    print(cert.ck6.render())
    print("\ncomputed, K(4):")
    print(cert.k4.render())
    print("\nprinted, CK(6):")
    print(J.printed_ck6_table().render())
    print()
    for name, rep in cert.reports.items():
        print(f"{'ok  ' if rep.ok else 'FAIL'} {name}: {len(rep.violations)} mismatches")
        for v in rep.violations:
            print("      ", v)
        for n in rep.notes:
            if n.startswith("flagged"):
                print("      ", n)
    print("\nisomorphic (signed correspondence):", cert.isomorphic)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(cert.to_json(), fh, indent=2, default=str)


if __name__ == "__main__":
    main()
