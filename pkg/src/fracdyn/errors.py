"""Exception hierarchy shared by all fracdyn modules.

Every numerical routine either returns finite values or raises one of
these; NaN and Inf never escape silently.
"""

from __future__ import annotations


class FracdynError(Exception):
    """Base class for all package errors."""


class DomainError(FracdynError):
    """Input outside the mathematical domain of the operation."""


class NonConvergence(FracdynError):
    """An iterative process failed to reach the requested tolerance."""


class RangeOverflow(FracdynError):
    """The true result magnitude exceeds double-precision range."""


class ContourThroughZero(FracdynError):
    """A winding contour could not be pushed off a zero of the function."""


class NewtonDivergence(FracdynError):
    """A Newton refinement left its cell or stagnated (per-seed, non-fatal)."""


class SingularTransform(FracdynError):
    """A similarity transform matrix is numerically singular."""


class QuadratureFailure(FracdynError):
    """Quadrature error estimate exceeds the requested tolerance."""


class BudgetExceeded(FracdynError):
    """Adaptive refinement hit its point budget."""


class DegreeTooLarge(FracdynError):
    """Characteristic polynomial degree exceeds the configured bound."""


class IllConditionedRoots(FracdynError):
    """A polynomial root failed its residual check."""


class InsufficientRange(FracdynError):
    """Trajectory window too short for the requested fit."""


class NoSingularityAtBoundary(FracdynError):
    """Region-II estimation requires a singular trajectory at the boundary angle."""


class BracketFailure(FracdynError):
    """Geometric bracket expansion failed to enclose a sign change."""


class Blowup(FracdynError):
    """Numerical solution exceeded the divergence bound."""


class InvalidStep(FracdynError):
    """Time-stepping parameters are inconsistent."""


class DegenerateTangent(FracdynError):
    """Tangent direction is below round-off on the whole probe sequence."""
