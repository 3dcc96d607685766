"""Resolvents and the deterministic matrix identities built on them.

Covers construction of R(z) = (W - z)^(-1) with residual bookkeeping,
principal minors and interlacing checks, both Schur complement identities,
the finite perturbation expansion of the trace, quadratic-form and
subspace-projection statistics, and pointwise comparison against the
semicircular transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .ensembles import HermitianMatrix
from .errors import (
    DimensionMismatchError,
    InvalidConfigError,
    InvalidDimensionError,
    NumericalFailureError,
    OrthonormalityError,
    SingularInputError,
    UnsupportedOrderError,
)
from .semicircle import ComplexEnergy, s_sc
from .spectral import Spectrum, StatValue

RESOLVENT_RESIDUAL_SCALE = 1e-8
INTERLACING_TOLERANCE = 1e-9
ORTHONORMALITY_TOLERANCE = 1e-10
MAX_PERTURBATION_ORDER = 6
_SOLVE_BLOCK = 512


@dataclass(frozen=True)
class Resolvent:
    """Dense R(z) plus the max-norm defect of (W - z) R - I."""

    z: ComplexEnergy
    entries: np.ndarray
    defining_residual: float

    def __post_init__(self) -> None:
        entries = np.asarray(self.entries, dtype=np.complex128)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise InvalidDimensionError(f"entries must be square, got {entries.shape}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def trace_mean(self) -> complex:
        """(1/n) tr R, the empirical Stieltjes transform at z."""
        return complex(np.trace(self.entries) / self.n)


def _shifted_lu(matrix: HermitianMatrix, z: ComplexEnergy):
    shifted = matrix.entries - z.z * np.eye(matrix.n, dtype=np.complex128)
    return shifted, lu_factor(shifted, check_finite=False)


def resolvent(matrix: HermitianMatrix, z: ComplexEnergy) -> Resolvent:
    """Materialize (W - z)^(-1) and record its defining residual.

    One LU factorization, then identity columns solved in blocks so peak
    temporary memory stays bounded for large n.  Construction fails if
    the residual exceeds 1e-8 (1 + 1/eta).
    """
    n = matrix.n
    shifted, lu = _shifted_lu(matrix, z)
    entries = np.empty((n, n), dtype=np.complex128)
    for start in range(0, n, _SOLVE_BLOCK):
        stop = min(start + _SOLVE_BLOCK, n)
        rhs = np.zeros((n, stop - start), dtype=np.complex128)
        rhs[np.arange(start, stop), np.arange(stop - start)] = 1.0
        entries[:, start:stop] = lu_solve(lu, rhs, check_finite=False)
    defect = shifted @ entries
    defect[np.diag_indices(n)] -= 1.0
    residual = float(np.abs(defect).max())
    bound = RESOLVENT_RESIDUAL_SCALE * (1.0 + 1.0 / z.eta)
    if residual > bound:
        raise NumericalFailureError(
            f"resolvent residual {residual:.3e} exceeds bound {bound:.3e}"
        )
    return Resolvent(z, entries, residual)


def coeff_norm(r: Resolvent) -> float:
    """Entrywise max |R_ij|."""
    return float(np.abs(r.entries).max())


def minor(matrix: HermitianMatrix, removed: Iterable[int]) -> HermitianMatrix:
    """Principal submatrix with the given rows/columns removed.

    Indices are 0-based.  The scale marker carries over: a minor of a
    normalized matrix remains on the normalized scale.
    """
    removed_set = set(int(i) for i in removed)
    if not removed_set:
        raise InvalidConfigError("must remove at least one index")
    n = matrix.n
    for i in removed_set:
        if not 0 <= i < n:
            raise InvalidDimensionError(f"index {i} out of range for n={n}")
    if len(removed_set) >= n:
        raise InvalidDimensionError("cannot remove every index")
    keep = np.array([i for i in range(n) if i not in removed_set])
    return HermitianMatrix(matrix.entries[np.ix_(keep, keep)], matrix.scale)


class InterlacingResult(NamedTuple):
    ok: bool
    max_violation: float


def check_interlacing(
    full: Spectrum, minor_spec: Spectrum, tol: float = INTERLACING_TOLERANCE
) -> InterlacingResult:
    """Verify lambda_i(full) <= mu_i <= lambda_{i+1}(full) up to tol.

    Returns the largest signed violation; negative values mean the
    inequalities hold with slack.
    """
    if minor_spec.n != full.n - 1:
        raise DimensionMismatchError(
            f"minor spectrum must have n-1={full.n - 1} values, got {minor_spec.n}"
        )
    lam = full.lam
    mu = minor_spec.lam
    violation = max(
        float((lam[:-1] - mu).max()),
        float((mu - lam[1:]).max()),
    )
    return InterlacingResult(violation <= tol, violation)


def _column_without(matrix: HermitianMatrix, col: int, removed: np.ndarray) -> np.ndarray:
    keep = np.array([i for i in range(matrix.n) if i not in set(removed.tolist())])
    return matrix.entries[keep, col]


def schur_diagonal(matrix: HermitianMatrix, z: ComplexEnergy, i: int) -> float:
    """Defect of R_ii = 1 / (W_ii - z - X* R^(i) X).

    X is column i of W with entry i deleted and R^(i) the resolvent of
    the minor with index i removed.  Both sides are computed by
    independent linear solves; the return value is their absolute gap.
    """
    n = matrix.n
    if not 0 <= i < n:
        raise InvalidDimensionError(f"index {i} out of range for n={n}")
    _, lu = _shifted_lu(matrix, z)
    e_i = np.zeros(n, dtype=np.complex128)
    e_i[i] = 1.0
    r_ii = lu_solve(lu, e_i, check_finite=False)[i]

    if n == 1:
        quad = 0.0 + 0.0j
    else:
        sub = minor(matrix, [i])
        x = _column_without(matrix, i, np.array([i]))
        _, lu_sub = _shifted_lu(sub, z)
        quad = np.vdot(x, lu_solve(lu_sub, x, check_finite=False))
    denominator = matrix.entries[i, i] - z.z - quad
    return abs(r_ii - 1.0 / denominator)


def schur_off_diagonal(
    matrix: HermitianMatrix, z: ComplexEnergy, i: int, j: int
) -> float:
    """Defect of R_ij = -R_ii R^(i)_jj (W_ij - X_i* (W^(ij)-z)^(-1) X_j).

    X_i and X_j are columns i and j of W with rows {i, j} deleted.  All
    pieces come from independent solves; returns the absolute gap between
    the two sides.
    """
    n = matrix.n
    if i == j:
        raise InvalidConfigError("off-diagonal identity needs i != j")
    for idx in (i, j):
        if not 0 <= idx < n:
            raise InvalidDimensionError(f"index {idx} out of range for n={n}")

    _, lu = _shifted_lu(matrix, z)
    rhs = np.zeros((n, 2), dtype=np.complex128)
    rhs[i, 0] = 1.0
    rhs[j, 1] = 1.0
    cols = lu_solve(lu, rhs, check_finite=False)
    r_ii = cols[i, 0]
    r_ij = cols[i, 1]

    sub_i = minor(matrix, [i])
    _, lu_sub_i = _shifted_lu(sub_i, z)
    j_in_minor = j if j < i else j - 1
    e_j = np.zeros(n - 1, dtype=np.complex128)
    e_j[j_in_minor] = 1.0
    r_minor_jj = lu_solve(lu_sub_i, e_j, check_finite=False)[j_in_minor]

    if n == 2:
        quad = 0.0 + 0.0j
    else:
        both = np.array([i, j])
        sub_ij = minor(matrix, both)
        x_i = _column_without(matrix, i, both)
        x_j = _column_without(matrix, j, both)
        _, lu_sub_ij = _shifted_lu(sub_ij, z)
        quad = np.vdot(x_i, lu_solve(lu_sub_ij, x_j, check_finite=False))
    coupling = matrix.entries[i, j] - quad
    return abs(r_ij - (-r_ii * r_minor_jj * coupling))


FORM_DIAGONAL = "diagonal"
FORM_SYMMETRIC = "symmetric"
FORM_ANTISYMMETRIC = "antisymmetric"


@dataclass(frozen=True)
class ElementaryMatrix:
    """Hermitian rank <= 2 matrix with unit entries at one position.

    Forms: diagonal(a) is e_a e_a*; symmetric(a, b) is e_a e_b* + e_b e_a*;
    antisymmetric(a, b) is i e_a e_b* - i e_b e_a*.  Indices are 0-based.
    """

    form: str
    a: int
    b: int | None = None

    def __post_init__(self) -> None:
        if self.form not in (FORM_DIAGONAL, FORM_SYMMETRIC, FORM_ANTISYMMETRIC):
            raise InvalidConfigError(f"unknown elementary form {self.form!r}")
        if self.a < 0:
            raise InvalidDimensionError("index a must be nonnegative")
        if self.form == FORM_DIAGONAL:
            if self.b is not None:
                raise InvalidConfigError("diagonal form takes a single index")
        else:
            if self.b is None or self.b < 0:
                raise InvalidDimensionError("pair forms need a second nonnegative index")
            if self.b == self.a:
                raise InvalidConfigError("pair indices must be distinct")

    @property
    def trace_v_squared(self) -> float:
        return 1.0 if self.form == FORM_DIAGONAL else 2.0

    def factors(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Return (P, C) with V = P C P*, P of shape (n, rank)."""
        if self.a >= n or (self.b is not None and self.b >= n):
            raise InvalidDimensionError(f"indices exceed dimension {n}")
        if self.form == FORM_DIAGONAL:
            p = np.zeros((n, 1), dtype=np.complex128)
            p[self.a, 0] = 1.0
            core = np.array([[1.0]], dtype=np.complex128)
            return p, core
        p = np.zeros((n, 2), dtype=np.complex128)
        p[self.a, 0] = 1.0
        p[self.b, 1] = 1.0
        if self.form == FORM_SYMMETRIC:
            core = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
        else:
            core = np.array([[0.0, 1.0j], [-1.0j, 0.0]], dtype=np.complex128)
        return p, core

    def to_dense(self, n: int) -> np.ndarray:
        p, core = self.factors(n)
        return p @ core @ p.conj().T


class PerturbationCheck(NamedTuple):
    series: complex
    exact: complex
    coefficients: np.ndarray


def perturb_series(
    m0: HermitianMatrix,
    v: ElementaryMatrix,
    t: float,
    z: ComplexEnergy,
    m: int,
) -> PerturbationCheck:
    """Order-m trace expansion of s_t = (1/n) tr (M0 + tV - z)^(-1).

    Coefficients follow the geometric series of (W - z + tV)^(-1): the
    j-th term is n^(-j/2) c_j t^j with c_j = (-1)^j n^(j/2-1) tr(R0 (V R0)^j).
    V has rank at most 2, so each trace reduces to 2x2 products of
    G = P* R0 P and H = P* R0^2 P.  Returns the series value, the exact
    trace recomputed from a fresh factorization of the perturbed matrix,
    and the c_j array.
    """
    if m < 0:
        raise InvalidConfigError("expansion order must be nonnegative")
    if m > MAX_PERTURBATION_ORDER:
        raise UnsupportedOrderError(
            f"expansion order {m} exceeds supported maximum {MAX_PERTURBATION_ORDER}"
        )
    n = m0.n
    r0 = resolvent(m0, z)

    perturbed = HermitianMatrix(m0.entries + t * v.to_dense(n), m0.scale)
    exact = resolvent(perturbed, z).trace_mean()

    p, core = v.factors(n)
    # G = P* R0 P and H = P* R0^2 P collapse every trace to rank x rank.
    r0_p = r0.entries @ p
    g = p.conj().T @ r0_p
    h = p.conj().T @ (r0.entries @ r0_p)

    s0 = r0.trace_mean()
    series = s0
    coefficients = np.zeros(m, dtype=np.complex128)
    power = np.eye(core.shape[0], dtype=np.complex128)
    for j in range(1, m + 1):
        # power = (G C)^(j-1) entering tr(H C (G C)^(j-1))
        trace_j = complex(np.trace(h @ core @ power))
        coefficients[j - 1] = (-1.0) ** j * n ** (j / 2.0 - 1.0) * trace_j
        series += (-t) ** j * trace_j / n
        power = g @ core @ power
    return PerturbationCheck(complex(series), exact, coefficients)


def quadratic_form_stat(x: np.ndarray, a: np.ndarray, sigma_sq: float) -> StatValue:
    """Normalized quadratic-form deviation (X*AX - s^2 tr A)/(s^2 sqrt(tr A*A))."""
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidDimensionError(f"matrix must be square, got {a.shape}")
    if a.shape[0] != x.size:
        raise DimensionMismatchError(
            f"vector length {x.size} does not match matrix dimension {a.shape[0]}"
        )
    if not sigma_sq > 0:
        raise InvalidConfigError("sigma_sq must be positive")
    frob_sq = float(np.real(np.vdot(a, a)))
    if frob_sq <= 0.0:
        raise SingularInputError("matrix has zero Frobenius norm")
    value = (np.vdot(x, a @ x) - sigma_sq * np.trace(a)) / (sigma_sq * math.sqrt(frob_sq))
    value = complex(value)
    return StatValue(value, abs(value))


def subspace_projection_norm(x: np.ndarray, basis: np.ndarray) -> float:
    """Squared norm of the projection of x onto the span of basis columns."""
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    basis = np.asarray(basis, dtype=np.complex128)
    if basis.ndim != 2 or basis.shape[0] != x.size:
        raise DimensionMismatchError(
            f"basis shape {basis.shape} does not match vector length {x.size}"
        )
    gram = basis.conj().T @ basis
    defect = float(np.abs(gram - np.eye(basis.shape[1])).max())
    if defect > ORTHONORMALITY_TOLERANCE:
        raise OrthonormalityError(
            f"basis orthonormality defect {defect:.3e} exceeds {ORTHONORMALITY_TOLERANCE}"
        )
    coords = basis.conj().T @ x
    return float(np.real(np.vdot(coords, coords)))


class LocalLawGap(NamedTuple):
    stieltjes_gap: float
    diagonal_gap: float


def local_law_residual(matrix: HermitianMatrix, z: ComplexEnergy) -> LocalLawGap:
    """Distance of the resolvent from its semicircular prediction.

    Returns |s_W(z) - s_sc(z)| together with max_i |R_ii - s_sc(z)|; the
    first never exceeds the second since the trace averages the diagonal.
    """
    r = resolvent(matrix, z)
    reference = s_sc(z)
    stieltjes_gap = abs(r.trace_mean() - reference)
    diagonal_gap = float(np.abs(np.diagonal(r.entries) - reference).max())
    return LocalLawGap(stieltjes_gap, diagonal_gap)
