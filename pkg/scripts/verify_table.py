"""Recompute every table row and orbit claim; exit 3 on any failure."""

import argparse
import sys
import time

from burau_orbits.tables import verify_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--row", help="restrict to one subgroup or family")
    ap.add_argument("--no-claims", action="store_true")
    args = ap.parse_args()
    t0 = time.perf_counter()
    verdicts = verify_table(args.row, claims=not args.no_claims)
    for v in verdicts:
        print(v.line())
    bad = sum(not v.ok for v in verdicts)
    print(f"{len(verdicts) - bad}/{len(verdicts)} passed in {time.perf_counter() - t0:.1f}s")
    return 3 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
