"""Check that no input in the negative list has a genus-zero orbit."""

import argparse
import sys
import time

from burau_orbits.tables import negative_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--quiet", action="store_true", help="print failures only")
    args = ap.parse_args()
    t0 = time.perf_counter()
    verdicts = negative_sweep(args.workers)
    for v in verdicts:
        if not (args.quiet and v.ok):
            print(v.line())
    bad = sum(not v.ok for v in verdicts)
    print(f"{len(verdicts) - bad}/{len(verdicts)} passed in {time.perf_counter() - t0:.1f}s")
    return 3 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
