"""Verdict table for every gallery set, symbolic and purely empirical side by side.

    python scripts/gallery_table.py --horizon 1048576 [--csv out.csv]
"""
import argparse
import csv
import sys
import time

from thinset.constructions import GALLERY_NAMES, gallery
from thinset.thinness import ALL_CLASSES, classify_all

SHORT = {"ProvedSymbolic": "P", "RefutedSymbolic": "R",
         "ConsistentUpTo": "c", "InconsistentUpTo": "i"}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--horizon", type=int, default=2**20)
    ap.add_argument("--primes-horizon", type=int, default=10**6)
    ap.add_argument("--csv", help="also write the long-format table here")
    args = ap.parse_args()

    rows = []
    print(f"{'set':12s} {'mode':9s} " + " ".join(f"{c.value[:10]:>10s}" for c in ALL_CLASSES) + "   time")
    for name in GALLERY_NAMES:
        N = args.primes_horizon if name == "primes" else args.horizon
        for mode, certs in (("symbolic", True), ("empirical", False)):
            t = time.perf_counter()
            v = classify_all(gallery(name), N, use_certificates=certs)
            dt = time.perf_counter() - t
            print(f"{name:12s} {mode:9s} "
                  + " ".join(f"{SHORT[v[c].status.value]:>10s}" for c in ALL_CLASSES)
                  + f"  {dt:5.2f}s")
            rows += [{"set": name, "mode": mode, "horizon": N, "class": c.value,
                      "status": v[c].status.value} for c in ALL_CLASSES]
    print("\nP proved, R refuted, c consistent up to N, i inconsistent up to N")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)


if __name__ == "__main__":
    sys.exit(main())
