"""Replay five spiked block prices near 407 through every oracle at window 12.

Prints each oracle's worst relative deviation from the pre-attack median
while the spikes are live, once per alignment of the clip against the
window restarts.

    python scripts/case_study.py --magnitude 2 --seed 0
"""
import argparse
from fractions import Fraction

from ormer.baselines import true_median
from ormer.harness.attack import AttackSpec, inject_attack
from ormer.harness.replay import replay
from ormer.harness.synth import case_study

KINDS = ("twap", "ema", "true-median", "ormer-med", "ormer-medds")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--magnitude", default="2")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--window", type=int, default=12)
    args = ap.parse_args()
    mag = Fraction(args.magnitude)
    L = args.window
    print("phase " + " ".join(f"{k:>12}" for k in KINDS))
    for phase in range(L):
        feed = case_study(seed=args.seed, warmup=2 * L + phase, block_time=12)
        s, c = feed.source, feed.clip_start
        idx = tuple(range(c + 3, c + 8))
        hit = inject_attack(s, AttackSpec(5, L, mag, idx)).series
        pre = true_median(s.prices[c + 3 - L:c + 3]).to_fraction()
        cells = []
        for kind in KINDS:
            out = replay(hit, kind, L).output
            at = dict(zip(out.times, out.prices))
            dev = max(abs(at[s.times[i]].to_fraction() - pre) / pre for i in idx if s.times[i] in at)
            cells.append(f"{float(dev):>12.3f}")
        print(f"{phase:>5} " + " ".join(cells))


if __name__ == "__main__":
    main()
