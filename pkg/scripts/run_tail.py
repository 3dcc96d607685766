"""Deviation tails of the counting function on a fixed interval, per ensemble."""

import argparse
from pathlib import Path

from wignerlab import Interval, builtin_ensemble
from wignerlab.cli import cache_root
from wignerlab.experiments import ExperimentConfig, run_tail_experiment
from wignerlab.svgplot import tail_curve_svg


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--ensemble", nargs="+", default=["gue", "bernoulli-complex"]
    )
    parser.add_argument("--n", type=int, default=400)
    parser.add_argument("--trials", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=2026)
    parser.add_argument("--lo", type=float, default=-1.0)
    parser.add_argument("--hi", type=float, default=1.0)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--cache-dir", default=None)
    parser.add_argument("--plots", action="store_true", help="write SVG curves")
    parser.add_argument("--out", default="results")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    root = str(cache_root(args.cache_dir))
    interval = Interval(args.lo, args.hi)
    out_dir = Path(args.out)
    print(f"deviation |N_I - n*integral| on I = [{interval.lo}, {interval.hi}]")
    for name in args.ensemble:
        config = ExperimentConfig(builtin_ensemble(name), args.n, args.trials, args.seed)
        summary = run_tail_experiment(
            config, interval, cache_root=root, workers=args.workers
        )
        slope = summary.extras["logTailSlope"]
        slope_text = "n/a" if slope is None else f"{slope:.3f}"
        print(
            f"{name:>20}: mean {summary.mean:.3f}, freq(T=10) "
            f"{summary.frequency_at(10.0):.4f}, log-tail slope {slope_text}"
        )
        if args.plots:
            out_dir.mkdir(parents=True, exist_ok=True)
            path = out_dir / f"tail-{name}.svg"
            path.write_text(
                tail_curve_svg(summary.tail_curve, f"{name}: deviation tail"),
                encoding="utf-8",
            )
            print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
