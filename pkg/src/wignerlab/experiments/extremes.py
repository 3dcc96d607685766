"""Extreme-eigenvalue experiments: edge fluctuations and rigidity.

Edge trials record n^{2/3}(lambda_max - 2) together with the mirrored
statistic n^{2/3}(-lambda_min - 2); the two tail curves should agree up
to binomial noise for the distributionally symmetric ensembles shipped
here. Rigidity trials record the rescaled deviation profile
n^{2/3} min(i, n-i+1)^{1/3} |lambda_i - gamma_i| and split it into the
edge band min(i, n-i+1) <= n^{1/10} and the bulk band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..semicircle import ClassicalLocationTable, classical_locations
from ..spectral import Spectrum, edge_statistic, edge_statistic_min, rigidity_profile
from .config import (
    EmpiricalSummary,
    ExperimentConfig,
    TailPoint,
    provenance_of,
    summarize,
    tail_curve,
)
from .runner import SpectrumTask, run_trials, task_for, trial_spectrum

DEFAULT_EDGE_GRID = tuple(float(t) for t in np.arange(-4.0, 6.5, 0.5))
DEFAULT_RIGIDITY_GRID = tuple(float(t) for t in range(0, 110, 10))

SpectrumSource = Callable[[SpectrumTask, int], Spectrum]


def _edge_trial(task: SpectrumTask, trial: int) -> tuple[float, float]:
    spectrum = trial_spectrum(task, trial)
    return edge_statistic(spectrum), edge_statistic_min(spectrum)


def symmetry_max_sigma(
    first: tuple[TailPoint, ...], second: tuple[TailPoint, ...]
) -> float:
    """Largest pointwise curve difference in combined-standard-error units."""
    worst = 0.0
    for p, q in zip(first, second):
        gap = abs(p.frequency - q.frequency)
        scale = math.hypot(p.stderr, q.stderr)
        if scale == 0.0:
            if gap > 0.0:
                return math.inf
            continue
        worst = max(worst, gap / scale)
    return worst


def run_edge_experiment(
    config: ExperimentConfig,
    t_grid=None,
    cache_root: str | None = None,
    workers: int = 1,
) -> EmpiricalSummary:
    """Summary of the max-edge statistic; min-edge curve in the extras."""
    if t_grid is None:
        t_grid = DEFAULT_EDGE_GRID
    provenance = provenance_of(
        "edge", config, {"tGrid": [float(t) for t in t_grid]}
    )
    task = task_for(config, cache_root)
    pairs = run_trials(config.trials, task, _edge_trial, workers)
    max_values = np.array([p[0] for p in pairs])
    min_values = np.array([p[1] for p in pairs])
    min_curve = tail_curve(min_values, t_grid)
    extras = {
        "minEdgeMean": float(min_values.mean()),
        "minEdgeTailCurve": [
            {"T": p.threshold, "frequency": p.frequency, "stderr": p.stderr}
            for p in min_curve
        ],
        "symmetryMaxSigma": symmetry_max_sigma(
            tail_curve(max_values, t_grid), min_curve
        ),
    }
    return summarize(max_values, t_grid, provenance, extras)


@dataclass(frozen=True)
class _RigidityPayload:
    task: SpectrumTask
    table: ClassicalLocationTable
    source: SpectrumSource


def _band_masks(n: int) -> tuple[np.ndarray, np.ndarray]:
    index = np.arange(1, n + 1, dtype=np.float64)
    depth = np.minimum(index, n - index + 1)
    edge = depth <= n ** (1.0 / 10.0)
    return edge, ~edge


def _rigidity_trial(payload: _RigidityPayload, trial: int) -> np.ndarray:
    spectrum = payload.source(payload.task, trial)
    return rigidity_profile(spectrum, payload.table)


@dataclass(frozen=True)
class RigidityReport:
    """Band-level summaries of the per-trial rescaled deviation maxima."""

    bulk: EmpiricalSummary
    edge: EmpiricalSummary

    def to_json(self) -> dict:
        return {"bulk": self.bulk.to_json(), "edge": self.edge.to_json()}


def run_rigidity_experiment(
    config: ExperimentConfig,
    t_grid=None,
    cache_root: str | None = None,
    workers: int = 1,
    spectrum_source: SpectrumSource = trial_spectrum,
) -> RigidityReport:
    """Max rescaled deviation per band and trial, plus per-index means.

    spectrum_source exists so a synthetic spectrum (for instance the
    classical locations themselves) can be injected to check the wiring.
    """
    if t_grid is None:
        t_grid = DEFAULT_RIGIDITY_GRID
    provenance = provenance_of(
        "rigidity", config, {"tGrid": [float(t) for t in t_grid]}
    )
    table = classical_locations(config.n)
    payload = _RigidityPayload(task_for(config, cache_root), table, spectrum_source)
    profiles = np.array(
        run_trials(config.trials, payload, _rigidity_trial, workers)
    )
    edge_mask, bulk_mask = _band_masks(config.n)
    mean_profile = profiles.mean(axis=0)

    def band_summary(mask: np.ndarray, label: str) -> EmpiricalSummary:
        if mask.any():
            maxima = profiles[:, mask].max(axis=1)
        else:
            maxima = np.zeros(profiles.shape[0])
        extras = {
            "band": label,
            "indexCount": int(mask.sum()),
            "meanProfile": [float(v) for v in mean_profile[mask]],
        }
        return summarize(maxima, t_grid, provenance, extras)

    return RigidityReport(
        bulk=band_summary(bulk_mask, "bulk"),
        edge=band_summary(edge_mask, "edge"),
    )
