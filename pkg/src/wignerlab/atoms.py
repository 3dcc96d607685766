"""Scalar entry laws with exact moments and deterministic samplers.

Each atom is a mean-zero real distribution used for the real part, the
imaginary part, or the diagonal of a random Hermitian matrix.  Moments up
to order 8 are closed-form, never estimated, so moment-matching between
two atoms can be decided exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import InvalidConfigError, UnsupportedOrderError

MAX_MOMENT_ORDER = 8
MOMENT_TOLERANCE = 1e-12


def _check_order(k: int) -> int:
    k = int(k)
    if k < 0:
        raise InvalidConfigError(f"moment order must be nonnegative, got {k}")
    if k > MAX_MOMENT_ORDER:
        raise UnsupportedOrderError(
            f"moment order {k} exceeds supported maximum {MAX_MOMENT_ORDER}"
        )
    return k


def _shape_total(size: int | tuple[int, ...]) -> int:
    if isinstance(size, int):
        return size
    return int(np.prod(size, dtype=np.int64)) if size else 1


class AtomDistribution:
    """Base interface: exact ``moment(k)`` plus ``sample(rng, size)``."""

    kind: str = "abstract"

    def moment(self, k: int) -> float:
        raise NotImplementedError

    def sample(self, rng: np.random.Generator, size: int | tuple[int, ...]) -> np.ndarray:
        raise NotImplementedError

    def to_json(self) -> dict[str, Any]:
        return atom_to_json(self)

    @staticmethod
    def from_json(obj: dict[str, Any]) -> "AtomDistribution":
        return atom_from_json(obj)


@dataclass(frozen=True)
class Gaussian(AtomDistribution):
    """Centered normal with the given variance."""

    variance: float = 1.0
    kind = "gaussian"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.variance) and self.variance > 0):
            raise InvalidConfigError("gaussian variance must be finite and positive")

    def moment(self, k: int) -> float:
        k = _check_order(k)
        if k % 2 == 1:
            return 0.0
        # E xi^{2m} = (2m-1)!! sigma^{2m}
        double_fact = 1.0
        for odd in range(1, k, 2):
            double_fact *= odd
        return double_fact * self.variance ** (k // 2)

    def sample(self, rng: np.random.Generator, size: int | tuple[int, ...]) -> np.ndarray:
        # Box-Muller on the raw uniform stream: output depends only on the
        # bit generator, not on the library's normal-sampling algorithm.
        total = _shape_total(size)
        pairs = (total + 1) // 2
        u1 = rng.random(pairs)
        u2 = rng.random(pairs)
        radius = np.sqrt(-2.0 * np.log1p(-u1))
        angle = 2.0 * np.pi * u2
        out = np.concatenate([radius * np.cos(angle), radius * np.sin(angle)])[:total]
        out *= math.sqrt(self.variance)
        return out.reshape(size)


@dataclass(frozen=True)
class Rademacher(AtomDistribution):
    """Uniform on {-scale, +scale}."""

    scale: float = 1.0
    kind = "rademacher"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.scale) and self.scale > 0):
            raise InvalidConfigError("rademacher scale must be finite and positive")

    @property
    def variance(self) -> float:
        return self.scale * self.scale

    def moment(self, k: int) -> float:
        k = _check_order(k)
        return self.scale**k if k % 2 == 0 else 0.0

    def sample(self, rng: np.random.Generator, size: int | tuple[int, ...]) -> np.ndarray:
        signs = 2.0 * rng.integers(0, 2, size=size).astype(np.float64) - 1.0
        return self.scale * signs


@dataclass(frozen=True)
class Discrete(AtomDistribution):
    """Finite-support law given by points and probabilities.

    Must be centered; sampling inverts the cumulative table on one
    uniform variate per draw.
    """

    support: tuple[float, ...]
    probs: tuple[float, ...]
    kind = "discrete"

    def __post_init__(self) -> None:
        object.__setattr__(self, "support", tuple(float(x) for x in self.support))
        object.__setattr__(self, "probs", tuple(float(p) for p in self.probs))
        if len(self.support) != len(self.probs) or not self.support:
            raise InvalidConfigError("support and probs must be equal-length, nonempty")
        p = np.asarray(self.probs)
        x = np.asarray(self.support)
        if np.any(p < 0) or abs(p.sum() - 1.0) > MOMENT_TOLERANCE:
            raise InvalidConfigError("probs must be nonnegative and sum to 1")
        if abs(float(p @ x)) > MOMENT_TOLERANCE:
            raise InvalidConfigError("discrete atom must have mean zero")
        if float(p @ x**2) <= 0.0:
            raise InvalidConfigError("discrete atom must have positive variance")

    @property
    def variance(self) -> float:
        return self.moment(2)

    def moment(self, k: int) -> float:
        k = _check_order(k)
        p = np.asarray(self.probs)
        x = np.asarray(self.support)
        return float(p @ x**k)

    def sample(self, rng: np.random.Generator, size: int | tuple[int, ...]) -> np.ndarray:
        cumulative = np.cumsum(np.asarray(self.probs))
        cumulative[-1] = 1.0
        u = rng.random(size)
        idx = np.searchsorted(cumulative, u, side="right")
        return np.asarray(self.support)[idx]


@dataclass(frozen=True)
class Zero(AtomDistribution):
    """Constant zero, for absent imaginary parts of real ensembles."""

    kind = "zero"

    @property
    def variance(self) -> float:
        return 0.0

    def moment(self, k: int) -> float:
        k = _check_order(k)
        return 1.0 if k == 0 else 0.0

    def sample(self, rng: np.random.Generator, size: int | tuple[int, ...]) -> np.ndarray:
        return np.zeros(size, dtype=np.float64)


def atom_to_json(atom: AtomDistribution) -> dict[str, Any]:
    """Tagged JSON object for an atom."""
    if isinstance(atom, Gaussian):
        return {"kind": "gaussian", "variance": atom.variance}
    if isinstance(atom, Rademacher):
        return {"kind": "rademacher", "scale": atom.scale}
    if isinstance(atom, Discrete):
        return {"kind": "discrete", "support": list(atom.support), "probs": list(atom.probs)}
    if isinstance(atom, Zero):
        return {"kind": "zero"}
    raise InvalidConfigError(f"cannot serialize atom {atom!r}")


def atom_from_json(obj: dict[str, Any]) -> AtomDistribution:
    """Inverse of :func:`atom_to_json`."""
    try:
        kind = obj["kind"]
    except (TypeError, KeyError):
        raise InvalidConfigError(f"atom document lacks a 'kind' tag: {obj!r}") from None
    if kind == "gaussian":
        return Gaussian(float(obj["variance"]))
    if kind == "rademacher":
        return Rademacher(float(obj["scale"]))
    if kind == "discrete":
        return Discrete(tuple(obj["support"]), tuple(obj["probs"]))
    if kind == "zero":
        return Zero()
    raise InvalidConfigError(f"unknown atom kind {kind!r}")


def moment_of(atom: AtomDistribution, k: int) -> float:
    """E[xi^k], exact."""
    return atom.moment(k)


def match_order(a: AtomDistribution, b: AtomDistribution, max_check: int) -> int:
    """Largest m <= max_check such that all moments of order <= m agree.

    Order-0 moments always agree, so the result is at least 0.  Equality
    is absolute within 1e-12, which is exact for the closed forms in play.
    """
    max_check = _check_order(max_check)
    order = 0
    for k in range(1, max_check + 1):
        if abs(a.moment(k) - b.moment(k)) > MOMENT_TOLERANCE:
            break
        order = k
    return order
