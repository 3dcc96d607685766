"""Wigner ensemble descriptions, matrix sampling, and diagnostics.

An ensemble is described by three atoms: real and imaginary parts of the
off-diagonal entries and a real diagonal law.  Sampling produces the raw
matrix; a separate normalization step divides by sqrt(n) and flips a scale
marker so the two conventions cannot be mixed up silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np

from .atoms import (
    MOMENT_TOLERANCE,
    AtomDistribution,
    Gaussian,
    Rademacher,
    Zero,
    atom_from_json,
    atom_to_json,
    match_order,
)
from .errors import (
    InvalidConfigError,
    InvalidDimensionError,
    InvalidStateError,
)
from .seeding import SeedStream

SCALE_RAW = "raw"
SCALE_NORMALIZED = "normalized"

# Variance conventions: "unit" enforces off-diagonal variance one, the
# convention every distributional statement here assumes; "raw" admits
# other readings of +-1 complex entries and is tagged so downstream
# reports can flag it.
CONVENTION_UNIT = "unit"
CONVENTION_RAW = "raw"


@dataclass(frozen=True)
class EnsembleSpec:
    """Entry laws for one Hermitian random-matrix ensemble."""

    name: str
    off_diag_real: AtomDistribution
    off_diag_imag: AtomDistribution
    diag: AtomDistribution
    sigma_sq: float
    variance_convention: str = field(default=CONVENTION_UNIT, compare=False)

    def __post_init__(self) -> None:
        if self.variance_convention not in (CONVENTION_UNIT, CONVENTION_RAW):
            raise InvalidConfigError(
                f"unknown variance convention {self.variance_convention!r}"
            )
        if abs(self.diag.variance - self.sigma_sq) > MOMENT_TOLERANCE:
            raise InvalidConfigError(
                "diagonal atom variance must equal sigma_sq "
                f"({self.diag.variance} vs {self.sigma_sq})"
            )
        if self.variance_convention == CONVENTION_UNIT:
            total = self.off_diag_variance
            if abs(total - 1.0) > MOMENT_TOLERANCE:
                raise InvalidConfigError(
                    f"off-diagonal variance must be 1, got {total}; "
                    "construct with variance_convention='raw' to allow this"
                )

    @property
    def off_diag_variance(self) -> float:
        return self.off_diag_real.variance + self.off_diag_imag.variance

    @property
    def is_real(self) -> bool:
        return isinstance(self.off_diag_imag, Zero)

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "offDiagReal": atom_to_json(self.off_diag_real),
            "offDiagImag": atom_to_json(self.off_diag_imag),
            "diag": atom_to_json(self.diag),
            "sigmaSq": self.sigma_sq,
        }

    @staticmethod
    def from_json(obj: dict[str, Any]) -> "EnsembleSpec":
        try:
            off_real = atom_from_json(obj["offDiagReal"])
            off_imag = atom_from_json(obj["offDiagImag"])
            diag = atom_from_json(obj["diag"])
            name = str(obj["name"])
            sigma_sq = float(obj["sigmaSq"])
        except (TypeError, KeyError, ValueError) as exc:
            raise InvalidConfigError(f"malformed ensemble document: {exc}") from exc
        total = off_real.variance + off_imag.variance
        convention = CONVENTION_UNIT if abs(total - 1.0) <= MOMENT_TOLERANCE else CONVENTION_RAW
        return EnsembleSpec(name, off_real, off_imag, diag, sigma_sq, convention)


def gue() -> EnsembleSpec:
    """Complex gaussian ensemble: entry parts N(0, 1/2), diagonal N(0, 1)."""
    return EnsembleSpec("gue", Gaussian(0.5), Gaussian(0.5), Gaussian(1.0), 1.0)


def goe() -> EnsembleSpec:
    """Real gaussian ensemble: entries N(0, 1), diagonal N(0, 2)."""
    return EnsembleSpec("goe", Gaussian(1.0), Zero(), Gaussian(2.0), 2.0)


def bernoulli_symmetric() -> EnsembleSpec:
    """Real +-1 entries, +-1 diagonal."""
    return EnsembleSpec("bernoulli-symmetric", Rademacher(1.0), Zero(), Rademacher(1.0), 1.0)


def bernoulli_complex(raw_parts: bool = False) -> EnsembleSpec:
    """Complex Hermitian Bernoulli ensemble.

    The default uses parts +-1/sqrt(2) so off-diagonal entries have unit
    variance.  ``raw_parts=True`` keeps the parts at +-1, giving entry
    variance 2; that variant is tagged with the "raw" convention and every
    unit-variance distributional prediction is off by the corresponding
    scale factor.
    """
    if raw_parts:
        return EnsembleSpec(
            "bernoulli-complex-raw",
            Rademacher(1.0),
            Rademacher(1.0),
            Rademacher(1.0),
            1.0,
            variance_convention=CONVENTION_RAW,
        )
    s = 1.0 / math.sqrt(2.0)
    return EnsembleSpec(
        "bernoulli-complex", Rademacher(s), Rademacher(s), Rademacher(1.0), 1.0
    )


_BUILTIN_FACTORIES = {
    "gue": gue,
    "goe": goe,
    "bernoulli-symmetric": bernoulli_symmetric,
    "bernoulli-complex": bernoulli_complex,
    "bernoulli-complex-raw": lambda: bernoulli_complex(raw_parts=True),
}


def builtin_ensemble(name: str) -> EnsembleSpec:
    """Look up a built-in ensemble by name."""
    try:
        factory = _BUILTIN_FACTORIES[name]
    except KeyError:
        known = ", ".join(sorted(_BUILTIN_FACTORIES))
        raise InvalidConfigError(f"unknown ensemble {name!r} (known: {known})") from None
    return factory()


def ensemble_match_order_vs_gue(spec: EnsembleSpec) -> tuple[int, int]:
    """Moment-match orders (off-diagonal, diagonal) against the GUE atoms.

    Checked up to order 6; the off-diagonal order is the minimum over the
    real and imaginary parts.
    """
    reference = gue()
    off = min(
        match_order(spec.off_diag_real, reference.off_diag_real, 6),
        match_order(spec.off_diag_imag, reference.off_diag_imag, 6),
    )
    diag = match_order(spec.diag, reference.diag, 6)
    return off, diag


@dataclass(frozen=True)
class HermitianMatrix:
    """One sampled matrix plus a marker for its normalization state."""

    entries: np.ndarray
    scale: str

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=np.complex128)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise InvalidDimensionError(f"entries must be square, got {entries.shape}")
        if entries.shape[0] == 0:
            raise InvalidDimensionError("matrix dimension must be at least 1")
        if self.scale not in (SCALE_RAW, SCALE_NORMALIZED):
            raise InvalidStateError(f"unknown scale marker {self.scale!r}")
        if not np.array_equal(entries, entries.conj().T):
            raise InvalidStateError("entries are not Hermitian")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def sample_wigner(
    spec: EnsembleSpec, n: int, seed: SeedStream, stream_index: int = 0
) -> HermitianMatrix:
    """Draw one raw matrix from the ensemble.

    The draw order is fixed (off-diagonal real block, then imaginary,
    then diagonal) so a given (spec, n, seed, stream) is bit-reproducible.
    """
    if n < 1:
        raise InvalidDimensionError(f"matrix dimension must be at least 1, got {n}")
    rng = seed.generator(stream_index)
    pairs = n * (n - 1) // 2
    re = spec.off_diag_real.sample(rng, pairs)
    im = spec.off_diag_imag.sample(rng, pairs)
    dg = spec.diag.sample(rng, n)

    entries = np.zeros((n, n), dtype=np.complex128)
    iu, ju = np.triu_indices(n, k=1)
    upper = re + 1j * im
    entries[iu, ju] = upper
    entries[ju, iu] = upper.conj()
    entries[np.arange(n), np.arange(n)] = dg
    return HermitianMatrix(entries, SCALE_RAW)


def normalize(matrix: HermitianMatrix) -> HermitianMatrix:
    """Divide by sqrt(n) and mark the result as normalized."""
    if matrix.scale != SCALE_RAW:
        raise InvalidStateError("matrix is already normalized")
    return HermitianMatrix(matrix.entries / math.sqrt(matrix.n), SCALE_NORMALIZED)


@dataclass(frozen=True)
class TailCheckPoint:
    t: float
    threshold: float
    frequency: float
    bound: float
    stderr: float
    flagged: bool


@dataclass(frozen=True)
class TailCheckReport:
    """Empirical exponential-decay check for one atom."""

    c: float
    c_prime: float
    samples: int
    points: tuple[TailCheckPoint, ...]

    @property
    def any_flagged(self) -> bool:
        return any(p.flagged for p in self.points)


def check_condition_c0(
    atom: AtomDistribution,
    c: float,
    c_prime: float,
    samples: int,
    rng: np.random.Generator,
    t_grid: Iterable[float] | None = None,
) -> TailCheckReport:
    """Compare tail frequencies P(|xi| >= t^C) against exp(-t) on a grid.

    A grid point is flagged when the observed frequency exceeds the bound
    by more than three binomial standard errors of the bound itself.
    """
    if samples < 1000:
        raise InvalidConfigError("need at least 1000 samples for the tail check")
    if t_grid is None:
        t_grid = np.linspace(c_prime, c_prime + 4.0, 9)
    draws = np.abs(atom.sample(rng, int(samples)))
    points = []
    for t in t_grid:
        t = float(t)
        if t < c_prime:
            raise InvalidConfigError(f"grid point {t} below C' = {c_prime}")
        threshold = t**c
        frequency = float(np.mean(draws >= threshold))
        bound = math.exp(-t)
        stderr = math.sqrt(max(bound * (1.0 - bound), 1e-300) / samples)
        flagged = frequency > bound + 3.0 * stderr
        points.append(TailCheckPoint(t, threshold, frequency, bound, stderr, flagged))
    return TailCheckReport(float(c), float(c_prime), int(samples), tuple(points))


def matrix_to_csv(matrix: HermitianMatrix, path) -> None:
    """Write entries row-major as alternating re,im columns."""
    with open(path, "w", encoding="ascii") as handle:
        for row in matrix.entries:
            cells = []
            for value in row:
                cells.append(f"{value.real:.17g}")
                cells.append(f"{value.imag:.17g}")
            handle.write(",".join(cells) + "\n")
