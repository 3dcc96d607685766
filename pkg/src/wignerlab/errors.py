"""Exception hierarchy with stable machine-readable codes.

Every error carries a ``code`` string that the command line interface maps
onto exit codes, so scripted callers can distinguish usage mistakes from
environment problems without parsing prose.
"""

from __future__ import annotations


class WignerLabError(Exception):
    """Base class for all package errors."""

    code = "error"


class UsageError(WignerLabError):
    """Caller supplied an argument or configuration the API rejects."""

    code = "usage"


class EnvironmentIOError(WignerLabError):
    """Filesystem or environment problem outside the caller's control."""

    code = "environment-io"


class InvalidDimensionError(UsageError):
    code = "invalid-dimension"


class InvalidStateError(UsageError):
    code = "invalid-state"


class UnsupportedOrderError(UsageError):
    code = "unsupported-order"


class DimensionMismatchError(UsageError):
    code = "dimension-mismatch"


class SingularInputError(UsageError):
    code = "singular-input"


class IllConditionedEnergyError(UsageError):
    code = "ill-conditioned-energy"


class InvalidIntervalError(UsageError):
    code = "invalid-interval"


class OrthonormalityError(UsageError):
    code = "basis-not-orthonormal"


class InvalidConfigError(UsageError):
    code = "invalid-config"


class ConfigNotFoundError(EnvironmentIOError):
    code = "config-not-found"


class CacheCorruptionError(EnvironmentIOError):
    code = "cache-corrupt"


class NumericalFailureError(WignerLabError):
    """A computed quantity violated its accuracy contract."""

    code = "numerical-failure"
