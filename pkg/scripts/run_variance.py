"""Count-variance sweep: unbiased variance of N_(-inf,x) against the log law."""

import argparse

from wignerlab import gue
from wignerlab.cli import cache_root
from wignerlab.experiments import ExperimentConfig, run_variance_experiment


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, nargs="+", default=[100, 200, 400])
    parser.add_argument("--trials", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=2026)
    parser.add_argument("--x", type=float, default=0.0)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--cache-dir", default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    root = str(cache_root(args.cache_dir))
    print(f"{'n':>6} {'variance':>10} {'reference':>10} {'ratio':>7} {'meanDev':>9}")
    for n in args.n:
        config = ExperimentConfig(gue(), n, args.trials, args.seed)
        summary = run_variance_experiment(
            config, args.x, cache_root=root, workers=args.workers
        )
        extras = summary.extras
        print(
            f"{n:>6} {extras['varianceEstimate']:>10.4f} "
            f"{extras['referenceValue']:>10.4f} {extras['ratio']:>7.3f} "
            f"{extras['meanDeviation']:>9.4f}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
