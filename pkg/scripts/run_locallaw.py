"""Scale invariance of |A| = n*eta*|s_emp - s_sc| across n at fixed n*eta."""

import argparse

from wignerlab import gue
from wignerlab.cli import cache_root
from wignerlab.experiments import ExperimentConfig, run_local_law_sweep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, nargs="+", default=[100, 200, 400])
    parser.add_argument("--trials", type=int, default=200)
    parser.add_argument("--seed", type=int, default=2026)
    parser.add_argument("--e", type=float, default=0.0)
    parser.add_argument("--n-eta", type=float, default=20.0)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--cache-dir", default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    root = str(cache_root(args.cache_dir))
    medians = {}
    print(f"{'n':>6} {'eta':>9} {'median|A|':>10} {'mean':>8} {'q95':>8}")
    for n in args.n:
        config = ExperimentConfig(gue(), n, args.trials, args.seed)
        sweep = run_local_law_sweep(
            config, [args.e], [args.n_eta / n], cache_root=root, workers=args.workers
        )
        summary = sweep.cells[0].summary
        medians[n] = summary.extras["medianStat"]
        print(
            f"{n:>6} {args.n_eta / n:>9.4f} {medians[n]:>10.4f} "
            f"{summary.mean:>8.4f} {summary.quantile(0.95):>8.4f}"
        )
    if len(medians) > 1:
        spread = max(medians.values()) / min(medians.values())
        print(f"median spread across n: factor {spread:.3f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
