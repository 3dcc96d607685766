"""Spectra and the statistics computed from them.

Everything here consumes a sorted eigenvalue array: interval counts,
deviations from the semicircular prediction, the empirical Stieltjes
transform and its normalized deviations, the reconstruction of the
counting function from the transform, and edge/rigidity rescalings.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import simpson

from .ensembles import SCALE_NORMALIZED, HermitianMatrix
from .errors import (
    CacheCorruptionError,
    DimensionMismatchError,
    IllConditionedEnergyError,
    InvalidConfigError,
    InvalidIntervalError,
    InvalidStateError,
    NumericalFailureError,
)
from .semicircle import ClassicalLocationTable, ComplexEnergy, s_sc, semicircle_cdf

RESIDUAL_SCALE = 1e-8
ENERGY_SEPARATION = 1e-9
DEFAULT_ETA_MAX = 1e6
DEFAULT_POINTS_PER_DECADE = 64


@dataclass(frozen=True)
class Spectrum:
    """Sorted real eigenvalues plus the eigensolver residual they came with.

    ``source_residual`` is 0 for synthetic spectra assembled directly from
    numbers; solver-produced spectra record max_k ||W v_k - lambda_k v_k||.
    """

    lam: np.ndarray
    source_residual: float = 0.0

    def __post_init__(self) -> None:
        lam = np.asarray(self.lam, dtype=np.float64).reshape(-1)
        if lam.size == 0:
            raise DimensionMismatchError("spectrum must contain at least one eigenvalue")
        if not np.all(np.isfinite(lam)):
            raise InvalidStateError("eigenvalues must be finite")
        if np.any(np.diff(lam) < 0):
            raise InvalidStateError("eigenvalues must be sorted ascending")
        lam.setflags(write=False)
        object.__setattr__(self, "lam", lam)

    @property
    def n(self) -> int:
        return self.lam.size

    def smallest(self) -> float:
        return float(self.lam[0])

    def largest(self) -> float:
        return float(self.lam[-1])


def eigenvalues(matrix: HermitianMatrix, allow_raw: bool = False) -> Spectrum:
    """Full spectrum of a Hermitian matrix, with residual bookkeeping.

    Refuses raw-scale input unless ``allow_raw`` is set, since every
    distributional prediction downstream assumes the normalized scale.
    The spectrum is rejected if the eigenpair residual exceeds
    1e-8 * max(1, max |lambda|).
    """
    if matrix.scale != SCALE_NORMALIZED and not allow_raw:
        raise InvalidStateError(
            "matrix is not normalized; pass allow_raw=True to override"
        )
    lam, vectors = np.linalg.eigh(matrix.entries)
    defect = matrix.entries @ vectors - vectors * lam[np.newaxis, :]
    residual = float(np.sqrt((np.abs(defect) ** 2).sum(axis=0)).max())
    bound = RESIDUAL_SCALE * max(1.0, float(np.abs(lam).max()))
    if residual > bound:
        raise NumericalFailureError(
            f"eigenpair residual {residual:.3e} exceeds bound {bound:.3e}"
        )
    return Spectrum(lam, residual)


@dataclass(frozen=True)
class Interval:
    """Real interval with explicit endpoint closedness.

    Infinite endpoints are always treated as open; the constructor
    normalizes the flags accordingly.
    """

    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = False

    def __post_init__(self) -> None:
        lo, hi = float(self.lo), float(self.hi)
        if math.isnan(lo) or math.isnan(hi):
            raise InvalidIntervalError("interval endpoints cannot be NaN")
        if lo > hi:
            raise InvalidIntervalError(f"need lo <= hi, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if math.isinf(lo):
            object.__setattr__(self, "lo_closed", False)
        if math.isinf(hi):
            object.__setattr__(self, "hi_closed", False)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @staticmethod
    def half_open(lo: float, hi: float) -> "Interval":
        return Interval(lo, hi, True, False)

    @staticmethod
    def closed(lo: float, hi: float) -> "Interval":
        return Interval(lo, hi, True, True)

    @staticmethod
    def less_than(e: float) -> "Interval":
        """(-inf, e), the counting-function interval."""
        return Interval(-math.inf, e, False, False)

    @staticmethod
    def everything() -> "Interval":
        return Interval(-math.inf, math.inf, False, False)


def count_in_interval(spectrum: Spectrum, interval: Interval) -> int:
    """Exact number of eigenvalues in the interval."""
    lam = spectrum.lam
    left = np.searchsorted(lam, interval.lo, side="left" if interval.lo_closed else "right")
    right = np.searchsorted(lam, interval.hi, side="right" if interval.hi_closed else "left")
    return int(max(right - left, 0))


def semicircle_deviation(spectrum: Spectrum, interval: Interval) -> float:
    """N_I minus the semicircular prediction n * integral_I rho."""
    expected = semicircle_cdf(interval.hi) - semicircle_cdf(interval.lo)
    return count_in_interval(spectrum, interval) - spectrum.n * float(expected)


def stieltjes_empirical(spectrum: Spectrum, z: ComplexEnergy) -> complex:
    """s(z) = (1/n) sum 1/(lambda_i - z)."""
    return complex(np.mean(1.0 / (spectrum.lam - z.z)))


class StatValue(NamedTuple):
    value: complex
    modulus: float


def stat_a(spectrum: Spectrum, z: ComplexEnergy) -> StatValue:
    """Normalized transform deviation n*eta*(s - s_sc) and its modulus."""
    gap = stieltjes_empirical(spectrum, z) - s_sc(z)
    value = spectrum.n * z.eta * gap
    return StatValue(value, abs(value))


def stat_b(spectrum: Spectrum, z: ComplexEnergy) -> float:
    """n*eta*Im s(z), the spectral mass seen at resolution eta.

    Equals the sum of eta^2 / ((lambda_i - E)^2 + eta^2) analytically;
    the test suite checks the two forms against each other.
    """
    return spectrum.n * z.eta * stieltjes_empirical(spectrum, z).imag


def count_from_stieltjes(
    spectrum: Spectrum,
    e: float,
    eta_min: float | None = None,
    eta_max: float = DEFAULT_ETA_MAX,
    grid_points_per_decade: int = DEFAULT_POINTS_PER_DECADE,
) -> float:
    """Reconstruct N_{(-inf, e)} from the Stieltjes transform.

    Uses pi/2 - (pi/n) N = Re integral_0^inf s(e + i*eta) d eta.  The
    middle range [eta_min, eta_max] is integrated by composite Simpson in
    log eta; the two end ranges are added in closed form, per eigenvalue,
    via Re integral 1/(lambda - e - i*eta) d eta = -[arg(e - lambda + i*eta)].

    The closed form makes the end corrections exact, so accuracy is set by
    the quadrature of the middle range alone.
    """
    lam = spectrum.lam
    n = spectrum.n
    if eta_min is None:
        eta_min = 1e-6 / n
    if not (0.0 < eta_min < eta_max):
        raise InvalidConfigError(f"need 0 < eta_min < eta_max, got [{eta_min}, {eta_max}]")
    separation = float(np.min(np.abs(lam - e)))
    if separation < ENERGY_SEPARATION:
        raise IllConditionedEnergyError(
            f"energy {e} is within {separation:.3e} of an eigenvalue"
        )

    decades = math.log10(eta_max / eta_min)
    points = int(math.ceil(decades * grid_points_per_decade)) + 1
    if points % 2 == 0:
        points += 1
    u = np.linspace(math.log(eta_min), math.log(eta_max), points)
    eta = np.exp(u)
    values = (1.0 / (lam[np.newaxis, :] - (e + 1j * eta)[:, np.newaxis])).mean(axis=1)
    # d eta = eta du turns the log-spaced grid into a uniform Simpson mesh.
    middle = float(simpson(values.real * eta, x=u))

    angle_min = np.arctan2(eta_min, e - lam)
    angle_zero = np.where(e > lam, 0.0, np.pi)
    lower = -float(np.mean(angle_min - angle_zero))
    angle_max = np.arctan2(eta_max, e - lam)
    upper = -float(np.mean(np.pi / 2.0 - angle_max))

    return (n / math.pi) * (math.pi / 2.0 - middle - lower - upper)


def edge_statistic(spectrum: Spectrum) -> float:
    """n^(2/3) (lambda_max - 2), the rescaled top-edge fluctuation."""
    return spectrum.n ** (2.0 / 3.0) * (spectrum.largest() - 2.0)


def edge_statistic_min(spectrum: Spectrum) -> float:
    """n^(2/3) (-lambda_min - 2), the mirror statistic at the bottom edge."""
    return spectrum.n ** (2.0 / 3.0) * (-spectrum.smallest() - 2.0)


def rigidity_profile(spectrum: Spectrum, table: ClassicalLocationTable) -> np.ndarray:
    """Rescaled deviations n^(2/3) min(i, n-i+1)^(1/3) |lambda_i - gamma_i|.

    Indices pair ascending eigenvalues with ascending quantile locations,
    which keeps min(i, n-i+1) symmetric under reversal.
    """
    n = spectrum.n
    if table.n != n:
        raise DimensionMismatchError(f"table has n={table.n}, spectrum has n={n}")
    i = np.arange(1, n + 1, dtype=np.float64)
    weight = n ** (2.0 / 3.0) * np.minimum(i, n - i + 1) ** (1.0 / 3.0)
    return weight * np.abs(spectrum.lam - table.gamma)


def crude_count_ratio(spectrum: Spectrum, interval: Interval) -> float:
    """N_I / (n |I|) for bounded nondegenerate intervals."""
    if math.isinf(interval.lo) or math.isinf(interval.hi):
        raise InvalidIntervalError("interval must be bounded")
    if interval.width <= 0.0:
        raise InvalidIntervalError("interval must have positive width")
    return count_in_interval(spectrum, interval) / (spectrum.n * interval.width)


_HEADER_RE = re.compile(
    r"^# n=(?P<n>\d+) key=(?P<key>\S+) residual=(?P<residual>\S+) sha=(?P<sha>[0-9a-f]{64})$"
)


def _spectrum_body(spectrum: Spectrum) -> str:
    return "\n".join(f"{value:.17g}" for value in spectrum.lam)


def spectrum_to_csv(spectrum: Spectrum, path, key: str) -> None:
    """Single-column spectrum file with an identifying, self-checking header.

    The header carries the dimension, the provenance key, the solver
    residual, and a digest of the value lines, so truncation or bit flips
    anywhere in the file are detectable.
    """
    from .hashing import sha256_hex

    body = _spectrum_body(spectrum)
    digest = sha256_hex(body.encode("ascii"))
    header = (
        f"# n={spectrum.n} key={key} "
        f"residual={spectrum.source_residual:.17g} sha={digest}"
    )
    with open(path, "w", encoding="ascii") as handle:
        handle.write(header + "\n" + body + "\n")


def spectrum_from_csv(path, expect_key: str | None = None) -> Spectrum:
    """Read a spectrum file, verifying header and content digest."""
    from .hashing import sha256_hex

    with open(path, "r", encoding="ascii") as handle:
        header = handle.readline().rstrip("\n")
        match = _HEADER_RE.match(header)
        if match is None:
            raise CacheCorruptionError(f"malformed spectrum header in {path}")
        n = int(match.group("n"))
        key = match.group("key")
        residual = float(match.group("residual"))
        if expect_key is not None and key != expect_key:
            raise CacheCorruptionError(
                f"spectrum file {path} carries key {key}, expected {expect_key}"
            )
        body = handle.read().rstrip("\n")
    if sha256_hex(body.encode("ascii")) != match.group("sha"):
        raise CacheCorruptionError(f"content digest mismatch in {path}")
    try:
        lam = np.array([float(line) for line in body.split("\n")], dtype=np.float64)
    except ValueError as exc:
        raise CacheCorruptionError(f"non-numeric value in {path}: {exc}") from exc
    if lam.size != n:
        raise CacheCorruptionError(f"{path} declares n={n} but holds {lam.size} values")
    try:
        return Spectrum(lam, residual)
    except (InvalidStateError, DimensionMismatchError) as exc:
        raise CacheCorruptionError(f"invalid spectrum in {path}: {exc}") from exc
