"""Quadratic-form concentration: identity, projection, and resolvent targets."""

import argparse

from wignerlab import ComplexEnergy, gue
from wignerlab.experiments import (
    ExperimentConfig,
    identity_kind,
    projection_kind,
    resolvent_kind,
    run_quadform_experiment,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=200)
    parser.add_argument("--trials", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=2026)
    parser.add_argument("--d", type=int, default=40, help="projection rank")
    parser.add_argument("--eta", type=float, default=0.5)
    parser.add_argument("--workers", type=int, default=1)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = ExperimentConfig(gue(), args.n, args.trials, args.seed)
    kinds = [
        identity_kind(),
        projection_kind(args.d),
        resolvent_kind(ComplexEnergy(0.0, args.eta)),
    ]
    for kind in kinds:
        summary = run_quadform_experiment(config, kind, workers=args.workers)
        line = (
            f"{kind.kind:>10}: mean |stat| {summary.mean:.3f}, "
            f"q95 {summary.quantile(0.95):.3f}, freq(T=5) {summary.frequency_at(5.0):.4f}"
        )
        if kind.kind == "projection":
            line += (
                f", projection norm mean {summary.extras['projectionNormMean']:.2f}"
                f" (rank {args.d})"
            )
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
