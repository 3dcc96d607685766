"""Deterministic residual suite for the exact matrix identities.

Random Wigner samples are pushed through the Schur complement identities,
the resolvent defining equation, and Cauchy interlacing; a second block
checks the perturbation series by verifying that halving t shrinks the
series truncation error at the order the expansion predicts. Every
residual is recorded so a failing sample is directly inspectable.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..ensembles import builtin_ensemble, normalize, sample_wigner
from ..errors import InvalidConfigError
from ..hashing import document_hash
from ..resolvent import (
    FORM_ANTISYMMETRIC,
    FORM_DIAGONAL,
    FORM_SYMMETRIC,
    ElementaryMatrix,
    check_interlacing,
    minor,
    perturb_series,
    resolvent,
    schur_diagonal,
    schur_off_diagonal,
)
from ..seeding import ROLE_PROBE, ROLE_TRIAL, SeedStream, compose_stream_index
from ..semicircle import ComplexEnergy
from ..spectral import eigenvalues

SCHUR_TOLERANCE = 1e-9
RESOLVENT_TOLERANCE = 1e-8
INTERLACING_LIMIT = 1e-9
RATIO_FLOOR = 11.0

SAMPLE_DIMS = (10, 30, 50)
SAMPLE_ENSEMBLES = ("gue", "goe", "bernoulli-symmetric", "bernoulli-complex")

PERTURBATION_N = 20
PERTURBATION_ORDER = 3
PERTURBATION_T = 0.1
PERTURBATION_Z = ComplexEnergy(0.3, 0.5)


@dataclass(frozen=True)
class IdentityRow:
    index: int
    ensemble: str
    n: int
    e: float
    eta: float
    diag_residual: float
    off_diag_residual: float
    resolvent_residual: float
    interlacing_violation: float

    @property
    def ok(self) -> bool:
        return (
            self.diag_residual <= SCHUR_TOLERANCE
            and self.off_diag_residual <= SCHUR_TOLERANCE
            and self.resolvent_residual <= RESOLVENT_TOLERANCE
            and self.interlacing_violation <= INTERLACING_LIMIT
        )


@dataclass(frozen=True)
class PerturbationRow:
    index: int
    error_full: float
    error_half: float
    ratio: float

    @property
    def ok(self) -> bool:
        return self.ratio >= RATIO_FLOOR


@dataclass(frozen=True)
class IdentitySuiteReport:
    samples: tuple[IdentityRow, ...]
    perturbations: tuple[PerturbationRow, ...]
    provenance_hash: str

    @property
    def all_pass(self) -> bool:
        return all(r.ok for r in self.samples) and all(
            r.ok for r in self.perturbations
        )

    def to_json(self) -> dict:
        return {
            "allPass": self.all_pass,
            "samples": [
                {
                    "index": r.index,
                    "ensemble": r.ensemble,
                    "n": r.n,
                    "E": r.e,
                    "eta": r.eta,
                    "diagResidual": r.diag_residual,
                    "offDiagResidual": r.off_diag_residual,
                    "resolventResidual": r.resolvent_residual,
                    "interlacingViolation": r.interlacing_violation,
                    "ok": r.ok,
                }
                for r in self.samples
            ],
            "perturbations": [
                {
                    "index": r.index,
                    "errorFull": r.error_full,
                    "errorHalf": r.error_half,
                    "ratio": r.ratio,
                    "ok": r.ok,
                }
                for r in self.perturbations
            ],
            "provenanceHash": self.provenance_hash,
        }


def _identity_sample(master_seed: int, index: int) -> IdentityRow:
    stream = SeedStream(master_seed)
    probe = stream.generator(compose_stream_index(ROLE_PROBE, index))
    name = SAMPLE_ENSEMBLES[index % len(SAMPLE_ENSEMBLES)]
    n = SAMPLE_DIMS[(index // len(SAMPLE_ENSEMBLES)) % len(SAMPLE_DIMS)]
    matrix = normalize(
        sample_wigner(
            builtin_ensemble(name), n, stream, compose_stream_index(ROLE_TRIAL, index)
        )
    )
    e = float(probe.uniform(-1.8, 1.8))
    eta = float(probe.uniform(0.05, 1.0))
    z = ComplexEnergy(e, eta)
    i = int(probe.integers(0, n))
    j = int(probe.integers(0, n - 1))
    if j >= i:
        j += 1
    interlacing = check_interlacing(
        eigenvalues(matrix), eigenvalues(minor(matrix, [i]))
    )
    return IdentityRow(
        index=index,
        ensemble=name,
        n=n,
        e=e,
        eta=eta,
        diag_residual=schur_diagonal(matrix, z, i),
        off_diag_residual=schur_off_diagonal(matrix, z, i, j),
        resolvent_residual=resolvent(matrix, z).defining_residual,
        interlacing_violation=interlacing.max_violation,
    )


def _random_elementary(probe, n: int) -> ElementaryMatrix:
    form = (FORM_DIAGONAL, FORM_SYMMETRIC, FORM_ANTISYMMETRIC)[
        int(probe.integers(0, 3))
    ]
    a = int(probe.integers(0, n))
    if form == FORM_DIAGONAL:
        return ElementaryMatrix(form, a)
    b = int(probe.integers(0, n - 1))
    if b >= a:
        b += 1
    return ElementaryMatrix(form, a, b)


def _perturbation_instance(master_seed: int, offset: int, index: int) -> PerturbationRow:
    stream = SeedStream(master_seed)
    probe = stream.generator(compose_stream_index(ROLE_PROBE, offset + index))
    m0 = normalize(
        sample_wigner(
            builtin_ensemble("gue"),
            PERTURBATION_N,
            stream,
            compose_stream_index(ROLE_TRIAL, offset + index),
        )
    )
    v = _random_elementary(probe, PERTURBATION_N)
    error = []
    for t in (PERTURBATION_T, PERTURBATION_T / 2.0):
        check = perturb_series(m0, v, t, PERTURBATION_Z, PERTURBATION_ORDER)
        error.append(abs(check.exact - check.series))
    ratio = error[0] / error[1] if error[1] > 0.0 else float("inf")
    return PerturbationRow(
        index=index, error_full=error[0], error_half=error[1], ratio=ratio
    )


def run_identity_suite(
    master_seed: int,
    samples: int = 100,
    perturbation_instances: int = 50,
) -> IdentitySuiteReport:
    if samples < 1 or perturbation_instances < 0:
        raise InvalidConfigError("need at least one sample and nonnegative instances")
    provenance = document_hash(
        {
            "kind": "identities",
            "masterSeed": master_seed,
            "samples": samples,
            "perturbationInstances": perturbation_instances,
            "dims": list(SAMPLE_DIMS),
            "ensembles": list(SAMPLE_ENSEMBLES),
        }
    )
    rows = tuple(_identity_sample(master_seed, i) for i in range(samples))
    perturbations = tuple(
        _perturbation_instance(master_seed, samples, i)
        for i in range(perturbation_instances)
    )
    return IdentitySuiteReport(rows, perturbations, provenance)
