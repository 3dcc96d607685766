"""Single-entry swap experiment for the statistic A = n*eta*(s - s_sc).

Each trial draws one shared matrix, then completes the fixed off-diagonal
position twice: once with an entry built from the first atom, once from
the second. Both completions reuse the trial's probe stream from the same
starting state, so identical atoms produce bitwise-identical matrices and
the paired difference of |A|^k collapses to exactly zero. For differing
atoms the shared bulk of the matrix acts as a common-random-numbers
coupling, shrinking the paired standard error well below the unpaired one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..atoms import AtomDistribution
from ..ensembles import HermitianMatrix, normalize, sample_wigner
from ..errors import InvalidConfigError, InvalidDimensionError, UnsupportedOrderError
from ..seeding import ROLE_PROBE, ROLE_TRIAL, SeedStream, compose_stream_index
from ..semicircle import ComplexEnergy
from ..spectral import eigenvalues, stat_a
from .config import (
    ExperimentConfig,
    SwapReport,
    atom_pair_report,
    atom_param,
    provenance_of,
)
from .runner import run_trials

MAX_SWAP_MOMENT = 12


@dataclass(frozen=True)
class _SwapPayload:
    config: ExperimentConfig
    k: int
    z: ComplexEnergy
    atom_first: AtomDistribution
    atom_second: AtomDistribution
    position: tuple[int, int]


def _completion_stat(payload: _SwapPayload, base, entry: complex) -> float:
    i, j = payload.position
    entries = np.array(base.entries)
    entries[i, j] = entry
    entries[j, i] = complex(entry).conjugate()
    matrix = HermitianMatrix(entries, base.scale)
    spectrum = eigenvalues(normalize(matrix))
    return stat_a(spectrum, payload.z).modulus ** payload.k


def _draw_entry(atom: AtomDistribution, rng, complex_entry: bool) -> complex:
    re = float(atom.sample(rng, 1)[0])
    if not complex_entry:
        return complex(re, 0.0)
    im = float(atom.sample(rng, 1)[0])
    return complex(re, im)


def _swap_trial(payload: _SwapPayload, trial: int) -> tuple[float, float]:
    config = payload.config
    stream = SeedStream(config.master_seed)
    base = sample_wigner(
        config.ensemble, config.n, stream, compose_stream_index(ROLE_TRIAL, trial)
    )
    probe_index = compose_stream_index(ROLE_PROBE, trial)
    complex_entry = not config.ensemble.is_real
    entry_first = _draw_entry(
        payload.atom_first, stream.generator(probe_index), complex_entry
    )
    entry_second = _draw_entry(
        payload.atom_second, stream.generator(probe_index), complex_entry
    )
    return (
        _completion_stat(payload, base, entry_first),
        _completion_stat(payload, base, entry_second),
    )


def run_swap_experiment(
    config: ExperimentConfig,
    k: int,
    z: ComplexEnergy,
    atom_first: AtomDistribution,
    atom_second: AtomDistribution,
    position: tuple[int, int] = (0, 1),
    workers: int = 1,
) -> SwapReport:
    if k % 2 != 0 or k < 2:
        raise InvalidConfigError(f"moment order k must be a positive even integer, got {k}")
    if k > MAX_SWAP_MOMENT:
        raise UnsupportedOrderError(f"moment order k ≤ {MAX_SWAP_MOMENT} required, got {k}")
    if config.n < 2:
        raise InvalidDimensionError("swap experiment needs an off-diagonal position")
    i, j = position
    if i == j or not (0 <= i < config.n and 0 <= j < config.n):
        raise InvalidConfigError(f"position {position} is not off-diagonal for n={config.n}")

    params = {
        "k": k,
        "z": {"E": z.E, "eta": z.eta},
        "atomFirst": atom_param(atom_first),
        "atomSecond": atom_param(atom_second),
        "position": [i, j],
    }
    provenance = provenance_of("swap", config, params)
    payload = _SwapPayload(config, k, z, atom_first, atom_second, (i, j))
    pairs = run_trials(config.trials, payload, _swap_trial, workers)
    first = np.array([p[0] for p in pairs])
    second = np.array([p[1] for p in pairs])
    diff = first - second
    m = config.trials
    if m > 1:
        se_first = float(first.std(ddof=1)) / math.sqrt(m)
        se_second = float(second.std(ddof=1)) / math.sqrt(m)
        se_paired = float(diff.std(ddof=1)) / math.sqrt(m)
        se_unpaired = math.hypot(se_first, se_second)
    else:
        se_first = se_second = se_paired = se_unpaired = math.nan
    paired_mean = float(diff.mean())
    if m > 1 and se_paired > 0.0:
        significant = abs(paired_mean) > 3.0 * se_paired
    else:
        significant = paired_mean != 0.0
    matched_order, moment_gap = atom_pair_report(atom_first, atom_second)
    return SwapReport(
        k=k,
        matched_order=matched_order,
        relative_moment_gap=moment_gap,
        mean_first=float(first.mean()),
        stderr_first=se_first,
        mean_second=float(second.mean()),
        stderr_second=se_second,
        paired_mean_difference=paired_mean,
        paired_stderr=se_paired,
        unpaired_stderr=se_unpaired,
        significant=significant,
        sample_count=m,
        provenance_hash=provenance,
    )
