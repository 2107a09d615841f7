"""Sample each weighted family on and off its polynomial condition and compare with the decider."""

import argparse
import random
from collections import Counter

from quadwalk.decider import decide
from quadwalk.families import FAMILIES, SampleStats


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--family", choices=sorted(FAMILIES), action="append")
    args = ap.parse_args()

    for name in args.family or sorted(FAMILIES):
        fam = FAMILIES[name]
        rng = random.Random(f"{args.seed}-{name}")
        before = SampleStats.finite_group_rejections
        tally = Counter()
        witnesses = Counter()
        for on in (True, False):
            for _ in range(args.trials):
                v = decide(fam.sample(rng, on))
                expected = fam.tag_on if on else fam.tag_off
                tally[(on, v.tag is expected)] += 1
                if v.witness is not None:
                    witnesses[v.witness.n] += 1
        redrawn = SampleStats.finite_group_rejections - before
        print(f"{name}: on {tally[(True, True)]}/{args.trials} agree, "
              f"off {tally[(False, True)]}/{args.trials} agree, "
              f"witnesses {dict(witnesses)}, finite-group redraws {redrawn}")


if __name__ == "__main__":
    main()
