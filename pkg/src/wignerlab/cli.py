"""Command line front end: sample, experiment, cache.

Configs are single JSON documents; flags override config fields. Every
experiment summary embeds the fully resolved config, so a previous
summary file is itself a valid --config input and reruns the same
experiment. Existing output files are never overwritten; a numeric
suffix is appended to the whole output group instead.

Exit codes: 0 success, 1 environment/IO or numerical failure, 2
usage/config error. Errors print one machine-readable line to stderr of
the form ``error: <code>: <message>``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .atoms import Gaussian, Rademacher, atom_from_json, atom_to_json
from .ensembles import EnsembleSpec, builtin_ensemble, matrix_to_csv, normalize, sample_wigner
from .errors import (
    ConfigNotFoundError,
    EnvironmentIOError,
    InvalidConfigError,
    NumericalFailureError,
    UsageError,
    WignerLabError,
)
from .seeding import SeedStream
from .semicircle import ComplexEnergy
from .spectral import Interval, eigenvalues
from .svgplot import tail_curve_svg
from .experiments import (
    ExperimentConfig,
    MatrixKind,
    SpectrumCache,
    TailPoint,
    resolved_config,
    run_edge_experiment,
    run_identity_suite,
    run_local_law_sweep,
    run_quadform_experiment,
    run_rigidity_experiment,
    run_swap_experiment,
    run_tail_experiment,
    run_variance_experiment,
    spectrum_key,
)
from .experiments.counting import DEFAULT_DEVIATION_GRID
from .experiments.extremes import DEFAULT_EDGE_GRID, DEFAULT_RIGIDITY_GRID
from .experiments.forms import DEFAULT_FORM_GRID
from .experiments.locallaw import DEFAULT_STAT_GRID

CACHE_ENV = "WIGNERLAB_CACHE_DIR"

EXPERIMENT_KINDS = (
    "variance",
    "tail",
    "edge",
    "rigidity",
    "swap",
    "quadform",
    "locallaw",
    "identities",
)

# parameter defaults per kind, matching the shipped acceptance scenarios
_DEFAULT_SHAPE = {
    "variance": (400, 2000),
    "tail": (400, 2000),
    "edge": (500, 500),
    "rigidity": (1000, 200),
    "swap": (200, 2000),
    "quadform": (200, 1000),
    "locallaw": (200, 200),
}

_ALLOWED_PARAMS = {
    "variance": {"x", "grid"},
    "tail": {"interval", "tGrid"},
    "edge": {"tGrid"},
    "rigidity": {"tGrid"},
    "swap": {"k", "z", "atomFirst", "atomSecond", "position"},
    "quadform": {"matrixKind", "tGrid"},
    "locallaw": {"eGrid", "etaGrid", "tGrid"},
    "identities": {"samples", "perturbationInstances"},
}


def cache_root(override: str | None = None) -> Path:
    if override:
        return Path(override)
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "wignerlab"


def _load_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except FileNotFoundError as exc:
        raise ConfigNotFoundError(f"config file not found: {path}") from exc
    except OSError as exc:
        raise EnvironmentIOError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise InvalidConfigError(f"config {path} must hold a JSON object")
    # a previous summary document is itself a valid config
    if "config" in document and isinstance(document["config"], dict):
        document = document["config"]
    return document


def _parse_ensemble(value) -> EnsembleSpec:
    if value is None:
        return builtin_ensemble("gue")
    if isinstance(value, str):
        return builtin_ensemble(value)
    if isinstance(value, dict):
        return EnsembleSpec.from_json(value)
    raise InvalidConfigError("ensemble must be a builtin name or a spec object")


def _require_int(document: dict, field: str) -> int:
    value = document.get(field)
    if not isinstance(value, int) or isinstance(value, bool):
        raise InvalidConfigError(f"{field} must be an integer")
    return value


def _master_seed(document: dict, override: int | None) -> int:
    if override is not None:
        return override
    value = document.get("masterSeed")
    if not isinstance(value, int) or isinstance(value, bool):
        raise InvalidConfigError("masterSeed missing; set it in the config or pass --seed")
    return value


def _parse_z(value, fallback: ComplexEnergy) -> ComplexEnergy:
    if value is None:
        return fallback
    if isinstance(value, dict) and "E" in value and "eta" in value:
        return ComplexEnergy(float(value["E"]), float(value["eta"]))
    raise InvalidConfigError('z must be an object {"E": ..., "eta": ...}')


def _float_list(value, fallback) -> list[float]:
    if value is None:
        return [float(v) for v in fallback]
    if isinstance(value, list) and value:
        return [float(v) for v in value]
    raise InvalidConfigError("grid fields must be nonempty arrays of numbers")


def _fresh_paths(out_dir: Path, names: list[str]) -> dict[str, Path]:
    """Suffix the whole output group so nothing existing is overwritten."""
    suffix = 0
    while True:
        suffix += 1
        tag = "" if suffix == 1 else f"-{suffix}"
        candidate = {}
        for name in names:
            stem, dot, ext = name.rpartition(".")
            candidate[name] = out_dir / (f"{stem}{tag}.{ext}" if dot else f"{name}{tag}")
        if not any(path.exists() for path in candidate.values()):
            return candidate


def _write_text(path: Path, text: str) -> None:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise EnvironmentIOError(f"cannot write {path}: {exc}") from exc
    print(f"wrote {path}")


def _tail_csv(curve) -> str:
    lines = ["T,frequency,stderr"]
    for point in curve:
        lines.append(
            f"{point.threshold:.17g},{point.frequency:.17g},{point.stderr:.17g}"
        )
    return "\n".join(lines) + "\n"


def _summary_json(resolved: dict, provenance: str, results: dict) -> str:
    document = {"config": resolved, "provenanceHash": provenance, "results": results}
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def _ensure_out_dir(out: str) -> Path:
    path = Path(out)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise EnvironmentIOError(f"cannot create output directory {path}: {exc}") from exc
    return path


def cmd_sample(args) -> int:
    document = _load_document(args.config)
    spec = _parse_ensemble(document.get("ensemble"))
    n = _require_int(document, "n")
    seed = _master_seed(document, args.seed)
    out_dir = _ensure_out_dir(args.out)

    matrix = sample_wigner(spec, n, SeedStream(seed))
    spectrum = eigenvalues(normalize(matrix))
    paths = _fresh_paths(out_dir, ["matrix.csv", "spectrum.csv"])
    matrix_to_csv(matrix, paths["matrix.csv"])
    print(f"wrote {paths['matrix.csv']}")
    lines = ["index,lambda"]
    for index, value in enumerate(spectrum.lam, start=1):
        lines.append(f"{index},{value:.17g}")
    _write_text(paths["spectrum.csv"], "\n".join(lines) + "\n")

    cache = SpectrumCache(cache_root(args.cache_dir))
    key = spectrum_key(spec, n, seed, 0)
    cache.put(key, spectrum)
    print(f"cached spectrum {key}")
    return 0


def _params_for(kind: str, document: dict) -> dict:
    params = document.get("params", {})
    if not isinstance(params, dict):
        raise InvalidConfigError("params must be an object")
    unknown = set(params) - _ALLOWED_PARAMS[kind]
    if unknown:
        raise InvalidConfigError(
            f"unknown params for kind {kind}: {sorted(unknown)}"
        )
    return params


def _shape_for(kind: str, document: dict) -> tuple[int, int]:
    default_n, default_trials = _DEFAULT_SHAPE[kind]
    n = document.get("n", default_n)
    trials = document.get("trials", default_trials)
    for label, value in (("n", n), ("trials", trials)):
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise InvalidConfigError(f"{label} must be a positive integer")
    return n, trials


def cmd_experiment(args) -> int:
    document = _load_document(args.config)
    kind = document.get("kind")
    if kind not in EXPERIMENT_KINDS:
        raise UsageError(
            f"unknown experiment kind {kind!r}; expected one of {', '.join(EXPERIMENT_KINDS)}"
        )
    out_dir = _ensure_out_dir(args.out)
    seed = _master_seed(document, args.seed)
    params = _params_for(kind, document)
    workers = args.workers

    if kind == "identities":
        samples = int(params.get("samples", 100))
        instances = int(params.get("perturbationInstances", 50))
        report = run_identity_suite(seed, samples, instances)
        resolved = {
            "kind": kind,
            "masterSeed": seed,
            "params": {"samples": samples, "perturbationInstances": instances},
        }
        paths = _fresh_paths(
            out_dir,
            [
                "identities-summary.json",
                "identities-samples.csv",
                "identities-perturbations.csv",
            ],
        )
        _write_text(
            paths["identities-summary.json"],
            _summary_json(resolved, report.provenance_hash, report.to_json()),
        )
        rows = ["index,ensemble,n,E,eta,diagResidual,offDiagResidual,resolventResidual,interlacingViolation,ok"]
        for r in report.samples:
            rows.append(
                f"{r.index},{r.ensemble},{r.n},{r.e:.17g},{r.eta:.17g},"
                f"{r.diag_residual:.17g},{r.off_diag_residual:.17g},"
                f"{r.resolvent_residual:.17g},{r.interlacing_violation:.17g},{r.ok}"
            )
        _write_text(paths["identities-samples.csv"], "\n".join(rows) + "\n")
        rows = ["index,errorFull,errorHalf,ratio,ok"]
        for p in report.perturbations:
            rows.append(
                f"{p.index},{p.error_full:.17g},{p.error_half:.17g},{p.ratio:.17g},{p.ok}"
            )
        _write_text(paths["identities-perturbations.csv"], "\n".join(rows) + "\n")
        if not report.all_pass:
            raise NumericalFailureError("identity suite reported failing residuals")
        print("identity suite: all checks passed")
        return 0

    n, trials = _shape_for(kind, document)
    spec = _parse_ensemble(document.get("ensemble"))
    config = ExperimentConfig(spec, n, trials, seed)
    root = str(cache_root(args.cache_dir)) if not args.no_cache else None

    curves: dict[str, tuple] = {}
    if kind == "variance":
        x = float(params.get("x", 0.0))
        grid = _float_list(params.get("grid"), DEFAULT_DEVIATION_GRID)
        summary = run_variance_experiment(
            config, x, grid=grid, cache_root=root, workers=workers
        )
        resolved = resolved_config(kind, config, {"x": x, "grid": grid})
        results = summary.to_json()
        for field in ("varianceEstimate", "referenceValue", "ratio"):
            if field in summary.extras:
                results[field] = summary.extras[field]
        provenance = summary.provenance_hash
        curves["variance-curve.csv"] = summary.tail_curve
    elif kind == "tail":
        bounds = params.get("interval", [-1.0, 1.0])
        if not (isinstance(bounds, list) and len(bounds) == 2):
            raise InvalidConfigError("interval must be a [lo, hi] array")
        interval = Interval(float(bounds[0]), float(bounds[1]))
        t_grid = _float_list(params.get("tGrid"), DEFAULT_DEVIATION_GRID)
        summary = run_tail_experiment(
            config, interval, t_grid=t_grid, cache_root=root, workers=workers
        )
        resolved = resolved_config(
            kind, config, {"interval": [interval.lo, interval.hi], "tGrid": t_grid}
        )
        results = summary.to_json()
        provenance = summary.provenance_hash
        curves["tail-curve.csv"] = summary.tail_curve
    elif kind == "edge":
        t_grid = _float_list(params.get("tGrid"), DEFAULT_EDGE_GRID)
        summary = run_edge_experiment(
            config, t_grid=t_grid, cache_root=root, workers=workers
        )
        resolved = resolved_config(kind, config, {"tGrid": t_grid})
        results = summary.to_json()
        provenance = summary.provenance_hash
        curves["edge-curve.csv"] = summary.tail_curve
        curves["edge-min-curve.csv"] = tuple(
            _point_from_json(row) for row in summary.extras["minEdgeTailCurve"]
        )
    elif kind == "rigidity":
        t_grid = _float_list(params.get("tGrid"), DEFAULT_RIGIDITY_GRID)
        report = run_rigidity_experiment(
            config, t_grid=t_grid, cache_root=root, workers=workers
        )
        resolved = resolved_config(kind, config, {"tGrid": t_grid})
        results = report.to_json()
        provenance = report.bulk.provenance_hash
        curves["rigidity-bulk-curve.csv"] = report.bulk.tail_curve
        curves["rigidity-edge-curve.csv"] = report.edge.tail_curve
    elif kind == "swap":
        k = int(params.get("k", 4))
        z = _parse_z(params.get("z"), ComplexEnergy(0.0, 0.1))
        atom_first = (
            atom_from_json(params["atomFirst"])
            if "atomFirst" in params
            else Gaussian(0.5)
        )
        atom_second = (
            atom_from_json(params["atomSecond"])
            if "atomSecond" in params
            else Rademacher(2.0 ** -0.5)
        )
        position = params.get("position", [0, 1])
        if not (isinstance(position, list) and len(position) == 2):
            raise InvalidConfigError("position must be an [i, j] array")
        report = run_swap_experiment(
            config,
            k,
            z,
            atom_first,
            atom_second,
            position=(int(position[0]), int(position[1])),
            workers=workers,
        )
        resolved = resolved_config(
            kind,
            config,
            {
                "k": k,
                "z": {"E": z.E, "eta": z.eta},
                "atomFirst": atom_to_json(atom_first),
                "atomSecond": atom_to_json(atom_second),
                "position": [int(position[0]), int(position[1])],
            },
        )
        results = report.to_json()
        provenance = report.provenance_hash
    elif kind == "quadform":
        kind_doc = params.get("matrixKind", {"kind": "identity"})
        if not isinstance(kind_doc, dict) or "kind" not in kind_doc:
            raise InvalidConfigError('matrixKind must be an object with a "kind" field')
        z = _parse_z(kind_doc["z"], None) if "z" in kind_doc else None
        matrix_kind = MatrixKind(kind_doc["kind"], d=kind_doc.get("d"), z=z)
        t_grid = _float_list(params.get("tGrid"), DEFAULT_FORM_GRID)
        summary = run_quadform_experiment(
            config, matrix_kind, t_grid=t_grid, workers=workers
        )
        resolved = resolved_config(
            kind, config, {"matrixKind": matrix_kind.to_json(), "tGrid": t_grid}
        )
        results = summary.to_json()
        provenance = summary.provenance_hash
        curves["quadform-curve.csv"] = summary.tail_curve
    else:
        e_grid = _float_list(params.get("eGrid"), [0.0])
        eta_grid = _float_list(params.get("etaGrid"), [20.0 / config.n])
        t_grid = _float_list(params.get("tGrid"), DEFAULT_STAT_GRID)
        sweep = run_local_law_sweep(
            config,
            e_grid,
            eta_grid,
            t_grid=t_grid,
            cache_root=root,
            workers=workers,
        )
        resolved = resolved_config(
            kind, config, {"eGrid": e_grid, "etaGrid": eta_grid, "tGrid": t_grid}
        )
        results = sweep.to_json()
        provenance = sweep.cells[0].summary.provenance_hash
        rows = ["E,eta,nEta,medianStat,mean,q95"]
        for cell in sweep.cells:
            s = cell.summary
            rows.append(
                f"{cell.e:.17g},{cell.eta:.17g},{s.extras['nEta']:.17g},"
                f"{s.extras['medianStat']:.17g},{s.mean:.17g},{s.quantile(0.95):.17g}"
            )
        names = ["locallaw-summary.json", "locallaw-grid.csv"]
        paths = _fresh_paths(out_dir, names)
        _write_text(
            paths["locallaw-summary.json"], _summary_json(resolved, provenance, results)
        )
        _write_text(paths["locallaw-grid.csv"], "\n".join(rows) + "\n")
        return 0

    names = [f"{kind}-summary.json"] + list(curves)
    if args.plots:
        names += [name[: -len(".csv")] + ".svg" for name in curves]
    paths = _fresh_paths(out_dir, names)
    _write_text(paths[f"{kind}-summary.json"], _summary_json(resolved, provenance, results))
    for name, curve in curves.items():
        _write_text(paths[name], _tail_csv(curve))
        if args.plots:
            svg_name = name[: -len(".csv")] + ".svg"
            _write_text(
                paths[svg_name],
                tail_curve_svg(curve, f"{kind}: exceedance frequency vs T"),
            )
    return 0


def _point_from_json(row: dict) -> TailPoint:
    return TailPoint(row["T"], row["frequency"], row["stderr"])


def cmd_cache(args) -> int:
    cache = SpectrumCache(cache_root(args.cache_dir))
    if args.action == "prune":
        removed = cache.prune()
        print(f"pruned {removed} corrupt entries")
    entries = cache.entries()
    count = len(entries)
    corrupt = sum(1 for e in entries if e.status == "corrupt")
    noun = "entry" if count == 1 else "entries"
    if count == 0:
        print("0 entries")
    elif corrupt == 0:
        print(f"{count} {noun}, verified")
    else:
        print(f"{count} {noun}, {corrupt} corrupt")
    if args.action in ("verify", "prune") or corrupt:
        for entry in entries:
            print(f"{entry.key} {entry.status}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wignerlab",
        description="Spectral statistics laboratory for Wigner random matrices",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, config_required: bool) -> None:
        if config_required:
            p.add_argument("--config", required=True, help="path to a JSON config")
        p.add_argument("--out", default="results", help="output directory")
        p.add_argument("--seed", type=int, default=None, help="master seed override")
        p.add_argument("--cache-dir", default=None, help="spectrum cache root")

    p_sample = sub.add_parser("sample", help="sample one matrix and its spectrum")
    add_common(p_sample, config_required=True)

    p_exp = sub.add_parser("experiment", help="run a Monte Carlo experiment")
    add_common(p_exp, config_required=True)
    p_exp.add_argument("--workers", type=int, default=1, help="worker process count")
    p_exp.add_argument("--plots", action="store_true", help="emit SVG tail curves")
    p_exp.add_argument(
        "--no-cache", action="store_true", help="skip the spectrum cache"
    )

    p_cache = sub.add_parser("cache", help="inspect the spectrum cache")
    p_cache.add_argument(
        "action", nargs="?", default="list", choices=("list", "verify", "prune")
    )
    p_cache.add_argument("--cache-dir", default=None, help="spectrum cache root")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.subcommand == "sample":
            return cmd_sample(args)
        if args.subcommand == "experiment":
            return cmd_experiment(args)
        return cmd_cache(args)
    except UsageError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 2
    except WignerLabError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
