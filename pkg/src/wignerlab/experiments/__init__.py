"""Monte Carlo experiment harness: configs, cache, runners, experiments."""

from .cache import CacheEntry, SpectrumCache, spectrum_key
from .config import (
    EmpiricalSummary,
    ExperimentConfig,
    SwapReport,
    TailPoint,
    binomial_stderr,
    jackknife_variance_stderr,
    log_tail_slope,
    provenance_of,
    resolved_config,
    summarize,
    tail_curve,
)
from .counting import run_tail_experiment, run_variance_experiment, variance_reference
from .extremes import RigidityReport, run_edge_experiment, run_rigidity_experiment
from .forms import (
    MatrixKind,
    identity_kind,
    projection_kind,
    resolvent_kind,
    run_quadform_experiment,
)
from .identities import (
    IdentityRow,
    IdentitySuiteReport,
    PerturbationRow,
    run_identity_suite,
)
from .locallaw import LocalLawCell, LocalLawSweep, run_local_law_sweep
from .runner import run_trials, spectra_for, task_for, trial_spectrum
from .swap import run_swap_experiment

__all__ = [
    "CacheEntry",
    "EmpiricalSummary",
    "ExperimentConfig",
    "IdentityRow",
    "IdentitySuiteReport",
    "LocalLawCell",
    "LocalLawSweep",
    "MatrixKind",
    "PerturbationRow",
    "RigidityReport",
    "SpectrumCache",
    "SwapReport",
    "TailPoint",
    "binomial_stderr",
    "identity_kind",
    "jackknife_variance_stderr",
    "log_tail_slope",
    "projection_kind",
    "provenance_of",
    "resolved_config",
    "resolvent_kind",
    "run_edge_experiment",
    "run_identity_suite",
    "run_local_law_sweep",
    "run_quadform_experiment",
    "run_rigidity_experiment",
    "run_swap_experiment",
    "run_tail_experiment",
    "run_trials",
    "run_variance_experiment",
    "spectra_for",
    "spectrum_key",
    "summarize",
    "tail_curve",
    "task_for",
    "trial_spectrum",
    "variance_reference",
]
