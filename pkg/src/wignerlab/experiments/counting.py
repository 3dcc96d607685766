"""Monte Carlo experiments on the eigenvalue counting function.

The variance experiment records N_(-inf,x) minus its semicircle
prediction n*F(x) per trial and compares the unbiased variance against
the logarithmic reference line log(n*(2+x)^{3/2})/(2*pi^2), which is the
leading-order GUE value in the bulk. The tail experiment records the
absolute counting deviation over an interval and its exceedance curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..atoms import Gaussian
from ..ensembles import EnsembleSpec
from ..errors import InvalidConfigError
from ..semicircle import semicircle_cdf
from ..spectral import Interval, count_in_interval, semicircle_deviation
from .config import (
    EmpiricalSummary,
    ExperimentConfig,
    jackknife_variance_stderr,
    log_tail_slope,
    provenance_of,
    summarize,
    tail_curve,
)
from .runner import SpectrumTask, run_trials, task_for, trial_spectrum

DEFAULT_DEVIATION_GRID = tuple(float(t) for t in range(0, 13))


def is_gue(spec: EnsembleSpec) -> bool:
    return (
        spec.off_diag_real == Gaussian(0.5)
        and spec.off_diag_imag == Gaussian(0.5)
        and spec.diag == Gaussian(1.0)
    )


def variance_reference(n: int, x: float) -> float:
    """Leading-order GUE variance of N_(-inf,x) in the bulk."""
    return math.log(n * (2.0 + x) ** 1.5) / (2.0 * math.pi**2)


@dataclass(frozen=True)
class _CountPayload:
    task: SpectrumTask
    interval: Interval


def _count_below_trial(payload: _CountPayload, trial: int) -> int:
    spectrum = trial_spectrum(payload.task, trial)
    return count_in_interval(spectrum, payload.interval)


def run_variance_experiment(
    config: ExperimentConfig,
    x: float,
    grid=None,
    cache_root: str | None = None,
    workers: int = 1,
) -> EmpiricalSummary:
    """Summary of the centered count N_(-inf,x) - n*F(x) over trials."""
    if not -2.0 <= x < 2.0:
        raise InvalidConfigError(f"threshold x must lie in [-2, 2), got {x}")
    provenance = provenance_of("variance", config, {"x": x})
    payload = _CountPayload(task_for(config, cache_root), Interval.less_than(x))
    counts = np.array(
        run_trials(config.trials, payload, _count_below_trial, workers),
        dtype=np.float64,
    )
    mean_reference = config.n * float(semicircle_cdf(x))
    centered = counts - mean_reference
    if grid is None:
        grid = DEFAULT_DEVIATION_GRID
    variance = float(np.var(centered, ddof=1)) if centered.size > 1 else 0.0
    extras = {
        "x": x,
        "varianceEstimate": variance,
        "varianceStderr": jackknife_variance_stderr(centered),
        "meanReference": mean_reference,
        "meanDeviation": float(centered.mean()),
    }
    if is_gue(config.ensemble):
        reference = variance_reference(config.n, x)
        extras["referenceValue"] = reference
        extras["ratio"] = variance / reference
    return summarize(centered, grid, provenance, extras)


def _tail_deviation_trial(payload: _CountPayload, trial: int) -> float:
    spectrum = trial_spectrum(payload.task, trial)
    return abs(semicircle_deviation(spectrum, payload.interval))


def run_tail_experiment(
    config: ExperimentConfig,
    interval: Interval,
    t_grid=None,
    cache_root: str | None = None,
    workers: int = 1,
) -> EmpiricalSummary:
    """Exceedance curve of |N_I - n*integral_I rho_sc| over the T grid."""
    if t_grid is None:
        t_grid = DEFAULT_DEVIATION_GRID
    params = {
        "interval": [interval.lo, interval.hi],
        "tGrid": [float(t) for t in t_grid],
    }
    provenance = provenance_of("tail", config, params)
    payload = _CountPayload(task_for(config, cache_root), interval)
    deviations = np.array(
        run_trials(config.trials, payload, _tail_deviation_trial, workers),
        dtype=np.float64,
    )
    slope = log_tail_slope(tail_curve(deviations, t_grid))
    return summarize(deviations, t_grid, provenance, {"logTailSlope": slope})
