"""Exception and warning types raised by the numerical layers."""
from __future__ import annotations

__all__ = [
    "NeumannxError",
    "PoleAt",
    "QuadratureNotConverged",
    "DivergentStrip",
    "ZeroOnBoundary",
    "SubdivisionBudgetExceeded",
    "NoZeroFound",
    "NewtonDiverged",
    "SingularSystem",
    "InsufficientResolution",
    "QuadratureWarning",
    "ProjectionWarning",
    "AsymptoticRangeWarning",
]


class NeumannxError(Exception):
    """Base class of all errors raised by neumannx."""


class PoleAt(NeumannxError, ZeroDivisionError):
    """Raised when a function is evaluated at (or too close to) one of its poles.

    The caller is expected to switch to a deflated or reduced formula.
    """

    def __init__(self, z: complex, message: str = None):
        self.z = complex(z)
        if message is None:
            message = f"Evaluation point {self.z} lies on a pole."
        super().__init__(message)


class QuadratureNotConverged(NeumannxError):
    """Adaptive quadrature exhausted its budget above the requested tolerance."""

    def __init__(self, message: str, error_estimate: float = None):
        self.error_estimate = error_estimate
        super().__init__(message)


class DivergentStrip(NeumannxError):
    """The requested integral does not converge for the given exponent."""


class ZeroOnBoundary(NeumannxError):
    """A contour passes through (or numerically too close to) a zero."""

    def __init__(self, point: complex, message: str = None):
        self.point = complex(point)
        if message is None:
            message = f"Function vanishes on the contour near {self.point}."
        super().__init__(message)


class SubdivisionBudgetExceeded(NeumannxError):
    """The quadtree used to isolate zeros grew beyond its box budget."""


class NoZeroFound(NeumannxError):
    """No non-trivial zero was found in the searched window."""


class NewtonDiverged(NeumannxError):
    """Newton iteration did not converge."""


class SingularSystem(NeumannxError):
    """The discrete operator has a nullspace larger than the constants."""


class InsufficientResolution(NeumannxError):
    """The mesh does not resolve the boundary band required by a diagnostic."""


class QuadratureWarning(UserWarning):
    """Quadrature reported a problem but the error estimate is acceptable."""


class ProjectionWarning(UserWarning):
    """Input data has been modified to satisfy a compatibility condition."""


class AsymptoticRangeWarning(UserWarning):
    """An asymptotic formula was used outside its range of validity."""
