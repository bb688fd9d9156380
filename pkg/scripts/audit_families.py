"""Jacobi identity and structural audits for every algebra family on a t-degree window."""
import argparse
import json
import time

from superconf.cli import audit_reports

FAMILIES = ["W:2", "S:2:g=1/3", "K:3", "K:4", "K:5", "Khat:4", "K:3:ns", "CK6", "K2:4", "K:6"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--window", type=int, default=2)
    ap.add_argument("--families", nargs="*", default=FAMILIES)
    ap.add_argument("--out", default=None, help="write all reports as JSON")
    args = ap.parse_args()
    out = {}
    for fam in args.families:
        t0 = time.time()
        reps = audit_reports(fam, (-args.window, args.window))
        for name, r in reps.items():
            print(f"{fam:12s} {name:22s} {'ok  ' if r.ok else 'FAIL'} checked {r.checked:8d}  "
                  f"({time.time() - t0:.1f}s)")
        out[fam] = {k: r.to_json() for k, r in reps.items()}
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(out, fh, indent=2, default=str)


if __name__ == "__main__":
    main()
