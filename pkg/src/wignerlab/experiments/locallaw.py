"""Grid sweep of the normalized Stieltjes deviation |A| = n*eta*|s - s_sc|.

One spectrum is computed per trial and reused across every (E, eta) cell,
so the sweep costs one eigensolve per trial regardless of grid size.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..semicircle import ComplexEnergy
from ..spectral import stat_a
from .config import EmpiricalSummary, ExperimentConfig, provenance_of, summarize
from .runner import SpectrumTask, run_trials, task_for, trial_spectrum

DEFAULT_STAT_GRID = tuple(float(t) for t in np.arange(0.0, 32.0, 2.0))


@dataclass(frozen=True)
class _SweepPayload:
    task: SpectrumTask
    cells: tuple[ComplexEnergy, ...]


def _sweep_trial(payload: _SweepPayload, trial: int) -> np.ndarray:
    spectrum = trial_spectrum(payload.task, trial)
    return np.array(
        [stat_a(spectrum, z).modulus for z in payload.cells], dtype=np.float64
    )


@dataclass(frozen=True)
class LocalLawCell:
    e: float
    eta: float
    summary: EmpiricalSummary

    def to_json(self) -> dict:
        return {"E": self.e, "eta": self.eta, "summary": self.summary.to_json()}


@dataclass(frozen=True)
class LocalLawSweep:
    cells: tuple[LocalLawCell, ...]

    def cell(self, e: float, eta: float) -> LocalLawCell:
        for cell in self.cells:
            if cell.e == e and cell.eta == eta:
                return cell
        raise KeyError(f"no cell at E={e}, eta={eta}")

    def to_json(self) -> dict:
        return {"cells": [cell.to_json() for cell in self.cells]}


def run_local_law_sweep(
    config: ExperimentConfig,
    e_grid,
    eta_grid,
    t_grid=None,
    cache_root: str | None = None,
    workers: int = 1,
) -> LocalLawSweep:
    """Per-cell summaries of |A| over the (E, eta) grid."""
    e_values = [float(e) for e in e_grid]
    eta_values = [float(eta) for eta in eta_grid]
    cells = tuple(
        ComplexEnergy(e, eta) for e in e_values for eta in eta_values
    )
    if t_grid is None:
        t_grid = DEFAULT_STAT_GRID
    provenance = provenance_of(
        "locallaw",
        config,
        {"eGrid": e_values, "etaGrid": eta_values, "tGrid": [float(t) for t in t_grid]},
    )
    payload = _SweepPayload(task_for(config, cache_root), cells)
    rows = np.array(run_trials(config.trials, payload, _sweep_trial, workers))
    summaries = []
    for column, z in enumerate(cells):
        values = rows[:, column]
        extras = {
            "E": z.E,
            "eta": z.eta,
            "nEta": config.n * z.eta,
            "medianStat": float(np.median(values)),
            "medianGap": float(np.median(values / (config.n * z.eta))),
        }
        summaries.append(
            LocalLawCell(z.E, z.eta, summarize(values, t_grid, provenance, extras))
        )
    return LocalLawSweep(tuple(summaries))
