"""Exact-identity audit: Schur complements, resolvents, interlacing, series."""

import argparse

from wignerlab.experiments import run_identity_suite


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=2026)
    parser.add_argument("--samples", type=int, default=100)
    parser.add_argument("--instances", type=int, default=50)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    suite = run_identity_suite(args.seed, args.samples, args.instances)
    rows = suite.samples
    print(f"{len(rows)} identity samples:")
    print(f"  worst schur diagonal residual     {max(r.diag_residual for r in rows):.3e}")
    print(f"  worst schur off-diagonal residual {max(r.off_diag_residual for r in rows):.3e}")
    print(f"  worst resolvent residual          {max(r.resolvent_residual for r in rows):.3e}")
    print(f"  worst interlacing violation       {max(r.interlacing_violation for r in rows):.3e}")
    if suite.perturbations:
        ratios = [p.ratio for p in suite.perturbations]
        print(f"{len(ratios)} perturbation instances:")
        print(f"  error ratio after halving t: min {min(ratios):.2f}, max {max(ratios):.2f}")
    print(f"all checks passed: {suite.all_pass}")
    return 0 if suite.all_pass else 1


if __name__ == "__main__":
    raise SystemExit(main())
