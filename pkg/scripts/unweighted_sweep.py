"""Classify every shipped unweighted step set (up to x<->y symmetry) and print the tallies."""

import argparse
import time

from quadwalk.corpus import sweep
from quadwalk.decider import VerdictTag
from quadwalk.model import NAME_OF_STEP


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--list", action="store_true", help="print one line per step set")
    args = ap.parse_args()

    start = time.perf_counter()
    res = sweep(workers=args.workers)
    if args.list:
        for steps, tag in sorted(res.verdicts.items(), key=lambda kv: (kv[1].value, kv[0])):
            print(f"{tag.value:30s} {' '.join(NAME_OF_STEP[s] for s in steps)}")
    c = res.counts()
    print(f"classes: {res.total}")
    for tag in VerdictTag:
        print(f"  {tag.value}: {c[tag]}")
    print(f"non-D-finite: {res.non_d_finite}")
    print(f"elapsed: {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
