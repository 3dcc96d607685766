"""Concentration experiments for quadratic forms X*AX.

The vector X carries iid entries built from the ensemble's off-diagonal
atoms. Three test matrices are supported: the identity, a uniformly
random rank-d orthogonal projection (fresh per trial), and the resolvent
of an independently sampled matrix from the same ensemble. The recorded
statistic is |X*AX - sigma^2 tr A| / (sigma^2 sqrt(tr A*A)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..ensembles import EnsembleSpec, normalize, sample_wigner
from ..errors import InvalidConfigError
from ..resolvent import quadratic_form_stat, resolvent, subspace_projection_norm
from ..seeding import ROLE_PROBE, ROLE_TRIAL, SeedStream, compose_stream_index
from ..semicircle import ComplexEnergy
from .config import EmpiricalSummary, ExperimentConfig, provenance_of, summarize
from .runner import run_trials

KIND_IDENTITY = "identity"
KIND_PROJECTION = "projection"
KIND_RESOLVENT = "resolvent"

DEFAULT_FORM_GRID = tuple(float(t) for t in np.arange(0.0, 8.5, 0.5))


@dataclass(frozen=True)
class MatrixKind:
    """Choice of the test matrix A in the quadratic form."""

    kind: str
    d: int | None = None
    z: ComplexEnergy | None = None

    def __post_init__(self) -> None:
        if self.kind not in (KIND_IDENTITY, KIND_PROJECTION, KIND_RESOLVENT):
            raise InvalidConfigError(f"unknown matrix kind {self.kind!r}")
        if self.kind == KIND_PROJECTION and (self.d is None or self.d < 1):
            raise InvalidConfigError("projection kind needs a positive rank d")
        if self.kind == KIND_RESOLVENT and self.z is None:
            raise InvalidConfigError("resolvent kind needs a spectral parameter z")

    def to_json(self) -> dict:
        doc: dict = {"kind": self.kind}
        if self.d is not None:
            doc["d"] = self.d
        if self.z is not None:
            doc["z"] = {"E": self.z.E, "eta": self.z.eta}
        return doc


def identity_kind() -> MatrixKind:
    return MatrixKind(KIND_IDENTITY)


def projection_kind(d: int) -> MatrixKind:
    return MatrixKind(KIND_PROJECTION, d=d)


def resolvent_kind(z: ComplexEnergy) -> MatrixKind:
    return MatrixKind(KIND_RESOLVENT, z=z)


def _draw_vector(spec: EnsembleSpec, rng, n: int) -> np.ndarray:
    re = spec.off_diag_real.sample(rng, n)
    im = spec.off_diag_imag.sample(rng, n)
    return re + 1j * im


def _random_basis(rng, n: int, d: int) -> np.ndarray:
    shape = (n, d)
    raw = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    q, r = np.linalg.qr(raw)
    # fix the phase so the basis is a deterministic function of the draw
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases.conj()


@dataclass(frozen=True)
class _FormPayload:
    config: ExperimentConfig
    matrix_kind: MatrixKind


def _form_trial(payload: _FormPayload, trial: int) -> tuple[float, float]:
    """Normalized statistic modulus and, for projections, the raw norm."""
    config = payload.config
    kind = payload.matrix_kind
    stream = SeedStream(config.master_seed)
    x = _draw_vector(
        config.ensemble,
        stream.generator(compose_stream_index(ROLE_TRIAL, trial)),
        config.n,
    )
    sigma_sq = config.ensemble.off_diag_variance
    probe = stream.generator(compose_stream_index(ROLE_PROBE, trial))
    if kind.kind == KIND_IDENTITY:
        a = np.eye(config.n, dtype=np.complex128)
        return quadratic_form_stat(x, a, sigma_sq).modulus, 0.0
    if kind.kind == KIND_PROJECTION:
        basis = _random_basis(probe, config.n, kind.d)
        a = basis @ basis.conj().T
        stat = quadratic_form_stat(x, a, sigma_sq).modulus
        return stat, subspace_projection_norm(x, basis)
    matrix = sample_wigner(
        config.ensemble, config.n, stream, compose_stream_index(ROLE_PROBE, trial)
    )
    a = resolvent(normalize(matrix), kind.z).entries
    return quadratic_form_stat(x, a, sigma_sq).modulus, 0.0


def run_quadform_experiment(
    config: ExperimentConfig,
    matrix_kind: MatrixKind,
    t_grid=None,
    workers: int = 1,
) -> EmpiricalSummary:
    if matrix_kind.kind == KIND_PROJECTION and matrix_kind.d > config.n:
        raise InvalidConfigError(
            f"projection rank {matrix_kind.d} exceeds dimension {config.n}"
        )
    if t_grid is None:
        t_grid = DEFAULT_FORM_GRID
    params = {
        "matrixKind": matrix_kind.to_json(),
        "tGrid": [float(t) for t in t_grid],
    }
    provenance = provenance_of("quadform", config, params)
    payload = _FormPayload(config, matrix_kind)
    results = run_trials(config.trials, payload, _form_trial, workers)
    stats = np.array([r[0] for r in results])
    extras: dict = {"matrixKind": matrix_kind.to_json()}
    if matrix_kind.kind == KIND_PROJECTION:
        norms = np.array([r[1] for r in results])
        extras["projectionNormMean"] = float(norms.mean())
        extras["projectionNormMeanPerRank"] = float(norms.mean()) / matrix_kind.d
    return summarize(stats, t_grid, provenance, extras)
