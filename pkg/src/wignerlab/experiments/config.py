"""Run descriptions and aggregate result containers.

An ExperimentConfig plus an experiment kind plus that kind's parameter
document determines a run completely; the canonical hash of the resolved
document is stamped on every result so outputs can be traced back to the
exact configuration that produced them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping, NamedTuple

import numpy as np

from ..atoms import AtomDistribution, atom_to_json, match_order
from ..ensembles import EnsembleSpec
from ..errors import InvalidConfigError
from ..hashing import document_hash
from ..seeding import SeedStream

DEFAULT_QUANTILES = (0.05, 0.25, 0.5, 0.75, 0.9, 0.95)


@dataclass(frozen=True)
class ExperimentConfig:
    """Ensemble, dimension, trial count, and master seed for one run."""

    ensemble: EnsembleSpec
    n: int
    trials: int
    master_seed: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidConfigError(f"n must be at least 1, got {self.n}")
        if self.trials < 1:
            raise InvalidConfigError(f"trials must be at least 1, got {self.trials}")

    def seed_stream(self) -> SeedStream:
        return SeedStream(self.master_seed)


def resolved_config(kind: str, config: ExperimentConfig, params: Mapping[str, Any]) -> dict:
    """Canonical JSON-ready document describing a run after defaults."""
    return {
        "kind": kind,
        "ensemble": config.ensemble.to_json(),
        "n": config.n,
        "trials": config.trials,
        "masterSeed": config.master_seed,
        "params": dict(params),
    }


def provenance_of(kind: str, config: ExperimentConfig, params: Mapping[str, Any]) -> str:
    return document_hash(resolved_config(kind, config, params))


class TailPoint(NamedTuple):
    threshold: float
    frequency: float
    stderr: float


def _require_monotone(curve: tuple[TailPoint, ...]) -> None:
    previous = 1.0 + 1e-15
    for point in curve:
        if not 0.0 <= point.frequency <= 1.0:
            raise InvalidConfigError(f"tail frequency {point.frequency} outside [0,1]")
        if point.frequency > previous + 1e-15:
            raise InvalidConfigError("tail frequencies must be nonincreasing in T")
        previous = point.frequency


@dataclass(frozen=True)
class EmpiricalSummary:
    """Aggregate statistics for one scalar per-trial statistic."""

    sample_count: int
    mean: float
    unbiased_variance: float
    quantiles: tuple[tuple[float, float], ...]
    tail_curve: tuple[TailPoint, ...]
    provenance_hash: str
    extras: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        thresholds = [p.threshold for p in self.tail_curve]
        if thresholds != sorted(thresholds):
            raise InvalidConfigError("tail thresholds must be sorted ascending")
        _require_monotone(self.tail_curve)

    def quantile(self, q: float) -> float:
        for level, value in self.quantiles:
            if math.isclose(level, q, rel_tol=0.0, abs_tol=1e-12):
                return value
        raise KeyError(f"quantile {q} not recorded")

    @property
    def median(self) -> float:
        return self.quantile(0.5)

    def tail_point(self, threshold: float) -> TailPoint:
        for point in self.tail_curve:
            if math.isclose(point.threshold, threshold, rel_tol=0.0, abs_tol=1e-12):
                return point
        raise KeyError(f"threshold {threshold} not on the tail grid")

    def frequency_at(self, threshold: float) -> float:
        return self.tail_point(threshold).frequency

    def to_json(self) -> dict:
        return {
            "sampleCount": self.sample_count,
            "mean": self.mean,
            "unbiasedVariance": self.unbiased_variance,
            "quantiles": {f"{q:g}": v for q, v in self.quantiles},
            "tailCurve": [
                {"T": p.threshold, "frequency": p.frequency, "stderr": p.stderr}
                for p in self.tail_curve
            ],
            "provenanceHash": self.provenance_hash,
            "extras": dict(self.extras),
        }


def binomial_stderr(frequency: float, samples: int) -> float:
    return math.sqrt(max(frequency * (1.0 - frequency), 0.0) / samples)


def tail_curve(values: np.ndarray, grid) -> tuple[TailPoint, ...]:
    """Exceedance frequencies P(value >= T) with binomial standard errors."""
    values = np.asarray(values, dtype=np.float64)
    m = values.size
    points = []
    for t in sorted(float(t) for t in grid):
        frequency = float(np.mean(values >= t))
        points.append(TailPoint(t, frequency, binomial_stderr(frequency, m)))
    return tuple(points)


def jackknife_variance_stderr(values: np.ndarray) -> float:
    """Leave-one-out standard error of the unbiased variance estimate."""
    values = np.asarray(values, dtype=np.float64)
    m = values.size
    if m < 3:
        return math.nan
    total = values.sum()
    total_sq = (values * values).sum()
    loo_mean = (total - values) / (m - 1)
    loo_sq = total_sq - values * values
    loo_var = (loo_sq - (m - 1) * loo_mean * loo_mean) / (m - 2)
    center = loo_var.mean()
    return math.sqrt((m - 1) / m * float(((loo_var - center) ** 2).sum()))


def log_tail_slope(curve: tuple[TailPoint, ...]) -> float | None:
    """Least-squares slope of log frequency against T over observable points."""
    observable = [(p.threshold, p.frequency) for p in curve if p.frequency > 0.0]
    if len(observable) < 2:
        return None
    t = np.array([point[0] for point in observable])
    log_f = np.log([point[1] for point in observable])
    t_centered = t - t.mean()
    denom = float((t_centered**2).sum())
    if denom == 0.0:
        return None
    return float((t_centered * (log_f - log_f.mean())).sum() / denom)


def summarize(
    values: np.ndarray,
    grid,
    provenance: str,
    extras: Mapping[str, Any] | None = None,
    quantile_levels: tuple[float, ...] = DEFAULT_QUANTILES,
) -> EmpiricalSummary:
    """Build the aggregate container for one per-trial statistic array."""
    values = np.asarray(values, dtype=np.float64)
    m = values.size
    variance = float(np.var(values, ddof=1)) if m > 1 else 0.0
    quantiles = tuple(
        (q, float(np.quantile(values, q))) for q in quantile_levels
    )
    return EmpiricalSummary(
        sample_count=m,
        mean=float(values.mean()),
        unbiased_variance=variance,
        quantiles=quantiles,
        tail_curve=tail_curve(values, grid),
        provenance_hash=provenance,
        extras=dict(extras or {}),
    )


@dataclass(frozen=True)
class SwapReport:
    """Paired comparison of E|A|^k across a single-entry atom swap."""

    k: int
    matched_order: int
    relative_moment_gap: float
    mean_first: float
    stderr_first: float
    mean_second: float
    stderr_second: float
    paired_mean_difference: float
    paired_stderr: float
    unpaired_stderr: float
    significant: bool
    sample_count: int
    provenance_hash: str

    def __post_init__(self) -> None:
        if self.k % 2 != 0:
            raise InvalidConfigError("moment order k must be even")
        if self.mean_first < 0 or self.mean_second < 0:
            raise InvalidConfigError("moment estimates of |A|^k must be nonnegative")

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "matchedOrder": self.matched_order,
            "relativeMomentGap": self.relative_moment_gap,
            "meanFirst": self.mean_first,
            "stderrFirst": self.stderr_first,
            "meanSecond": self.mean_second,
            "stderrSecond": self.stderr_second,
            "pairedMeanDifference": self.paired_mean_difference,
            "pairedStderr": self.paired_stderr,
            "unpairedStderr": self.unpaired_stderr,
            "significant": self.significant,
            "sampleCount": self.sample_count,
            "provenanceHash": self.provenance_hash,
        }


def atom_pair_report(a: AtomDistribution, b: AtomDistribution) -> tuple[int, float]:
    """Matched order of two atoms and the relative gap at the first mismatch."""
    order = match_order(a, b, 8)
    if order >= 8:
        return order, 0.0
    k = order + 1
    ma, mb = a.moment(k), b.moment(k)
    gap = abs(ma - mb) / max(abs(ma), abs(mb), 1.0)
    return order, gap


def atom_param(atom: AtomDistribution) -> dict:
    return atom_to_json(atom)
