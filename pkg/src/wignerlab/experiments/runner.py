"""Deterministic trial execution, optionally across worker processes.

Each trial owns the generator derived from (masterSeed, trialIndex) and
nothing else; results are merged in trial order, so the outcome is
bit-identical for any worker count. BLAS threading is pinned to one
thread in every path for the same reason.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from threadpoolctl import threadpool_limits

from ..ensembles import EnsembleSpec, normalize, sample_wigner
from ..errors import NumericalFailureError
from ..seeding import ROLE_RETRY, ROLE_TRIAL, SeedStream, compose_stream_index
from ..spectral import Spectrum, eigenvalues
from .cache import SpectrumCache, spectrum_key
from .config import ExperimentConfig

TrialFn = Callable[[Any, int], Any]


def _run_range(payload: Any, trial_fn: TrialFn, start: int, stop: int) -> list:
    with threadpool_limits(limits=1):
        return [trial_fn(payload, t) for t in range(start, stop)]


def run_trials(
    trials: int, payload: Any, trial_fn: TrialFn, workers: int = 1
) -> list:
    """Evaluate trial_fn(payload, t) for t in [0, trials), merged in order."""
    if workers <= 1:
        return _run_range(payload, trial_fn, 0, trials)
    results: list = [None] * trials
    chunk = max(1, -(-trials // (workers * 4)))
    starts = list(range(0, trials, chunk))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = {
            pool.submit(_run_range, payload, trial_fn, s, min(s + chunk, trials)): s
            for s in starts
        }
        for future, s in futures.items():
            block = future.result()
            results[s : s + len(block)] = block
    return results


@dataclass(frozen=True)
class SpectrumTask:
    """Picklable recipe for the spectrum of one seeded trial."""

    ensemble: EnsembleSpec
    n: int
    master_seed: int
    cache_root: str | None = None


def task_for(config: ExperimentConfig, cache_root: str | None) -> SpectrumTask:
    return SpectrumTask(config.ensemble, config.n, config.master_seed, cache_root)


def trial_spectrum(task: SpectrumTask, trial: int) -> Spectrum:
    """Spectrum for one trial, via the cache when one is attached.

    A failed eigensolve is retried once on a fresh draw from the retry
    stream; the retry is part of the trial's deterministic history, so
    reruns agree.
    """
    cache = SpectrumCache(task.cache_root) if task.cache_root is not None else None
    key = spectrum_key(task.ensemble, task.n, task.master_seed, trial)
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    stream = SeedStream(task.master_seed)
    try:
        matrix = sample_wigner(
            task.ensemble, task.n, stream, compose_stream_index(ROLE_TRIAL, trial)
        )
        spectrum = eigenvalues(normalize(matrix))
    except NumericalFailureError:
        matrix = sample_wigner(
            task.ensemble, task.n, stream, compose_stream_index(ROLE_RETRY, trial)
        )
        spectrum = eigenvalues(normalize(matrix))
    if cache is not None:
        cache.put(key, spectrum)
    return spectrum


def spectra_for(
    config: ExperimentConfig, cache_root: str | None = None, workers: int = 1
) -> Sequence[Spectrum]:
    task = task_for(config, cache_root)
    return run_trials(config.trials, task, trial_spectrum, workers)
