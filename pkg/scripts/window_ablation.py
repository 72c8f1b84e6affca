"""Sweep the window size for all five oracles on one seeded GBM feed.

Reports MSE, Delay (All), mean Update cost and mean Query cost per window,
and optionally plots the four panels.

    python scripts/window_ablation.py --windows 8 12 23 24 25 50 --plot ablation.png
"""
import argparse

from ormer.harness.report import compare
from ormer.harness.synth import gbm

KINDS = ("twap", "ema", "true-median", "ormer-med", "ormer-medds")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--windows", type=int, nargs="+", default=[8, 9, 12, 23, 24, 25, 50, 100])
    ap.add_argument("--seconds", type=int, default=7200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--plot")
    args = ap.parse_args()
    feed = gbm(args.seconds, seed=args.seed)
    table = {}
    for L in args.windows:
        # MedDS needs a half window of at least 6
        kinds = [k for k in KINDS if k != "ormer-medds" or L >= 12]
        cmp = compare(feed.source, kinds, L, reference=feed.reference)
        for k in kinds:
            r = cmp.results[k]
            table[(k, L)] = (cmp.rows[k]["MSE"], cmp.rows[k]["Delay (All)"], r.update_cost, r.query_cost)
    for col, name in enumerate(("MSE", "Delay (All)", "Update cost", "Query cost")):
        print(f"\n{name}")
        print(f"{'window':>12} " + " ".join(f"{L:>10}" for L in args.windows))
        for k in KINDS:
            cells = (f"{table[(k, L)][col]:>10.4g}" if (k, L) in table else f"{'-':>10}" for L in args.windows)
            print(f"{k:>12} " + " ".join(cells))
    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, axes = plt.subplots(1, 4, figsize=(16, 3.5))
        for col, (ax, name) in enumerate(zip(axes, ("MSE", "Delay (All)", "Update cost", "Query cost"))):
            for k in KINDS:
                ws = [L for L in args.windows if (k, L) in table]
                ax.plot(ws, [table[(k, L)][col] for L in ws], marker="o", label=k)
            ax.set_title(name)
            ax.set_xlabel("window")
        axes[0].legend(fontsize=7)
        fig.tight_layout()
        fig.savefig(args.plot, dpi=120)


if __name__ == "__main__":
    main()
