"""Print candidate heights and orbit multipliers for each I_n fiber type at t = 0."""

import argparse

from quadwalk.heights import candidate_multipliers, height_candidates


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cap", type=int, default=25)
    args = ap.parse_args()
    for n0 in range(1, 10):
        H = height_candidates(n0)
        mults = sorted(n for n in candidate_multipliers(H, H, args.cap) if n > 0)
        print(f"I{n0}: {len(H.values)} heights, |n| in {mults}")
        print("    " + " ".join(str(h) for h in H.sorted()))


if __name__ == "__main__":
    main()
