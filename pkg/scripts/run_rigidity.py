"""Rigidity profile: rescaled |lambda_i - gamma_i| maxima per spectral band."""

import argparse

from wignerlab import gue
from wignerlab.cli import cache_root
from wignerlab.experiments import ExperimentConfig, run_rigidity_experiment


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=1000)
    parser.add_argument("--trials", type=int, default=200)
    parser.add_argument("--seed", type=int, default=2026)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--cache-dir", default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = ExperimentConfig(gue(), args.n, args.trials, args.seed)
    report = run_rigidity_experiment(
        config, cache_root=str(cache_root(args.cache_dir)), workers=args.workers
    )
    print(f"rescaled deviation maxima, n={args.n}, {args.trials} trials")
    for summary in (report.bulk, report.edge):
        print(
            f"  {summary.extras['band']:>4} band "
            f"({summary.extras['indexCount']:>4} indices): "
            f"mean {summary.mean:.2f}, median {summary.median:.2f}, "
            f"q95 {summary.quantile(0.95):.2f}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
