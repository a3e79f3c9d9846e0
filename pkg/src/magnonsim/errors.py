"""Exception hierarchy used across the package.

Every error raised on a contract violation derives from ``MagnonSimError``
so callers (notably the CLI) can map failures to stable exit codes.
"""

from __future__ import annotations


class MagnonSimError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(MagnonSimError, ValueError):
    """Invalid argument or configuration value (bad dimension, sign, key...)."""


class ConvergenceError(MagnonSimError):
    """A solver finished without reaching its residual target."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class DegenerateSteadyStateError(MagnonSimError):
    """The generator kernel has dimension > 1, so no unique steady state."""

    def __init__(self, message: str, kernel_dim: int):
        super().__init__(message)
        self.kernel_dim = kernel_dim


class UndefinedCorrelationError(MagnonSimError):
    """g2(0) requested for a state with (numerically) zero mode population."""


class BracketError(MagnonSimError):
    """A root bracket precondition does not hold at the given endpoints."""


class SweepFailureError(MagnonSimError):
    """A grid point failed to solve even after the fallback solver."""

    def __init__(self, message: str, coordinates: tuple[float, ...]):
        super().__init__(message)
        self.coordinates = coordinates
