"""
Exception hierarchy shared by every minorant app.
"""
from typing import Optional


class MinorantError(Exception):
    """Base class for errors raised by the simulation and verification code."""


class DomainError(MinorantError, ValueError):
    """An argument lies outside the domain of the operation."""


class UnsupportedError(MinorantError):
    """The requested computation is not available for this model family."""


class NumericError(MinorantError, ArithmeticError):
    """A simulation produced a non-finite value."""

    def __init__(self, message: str, step: Optional[int] = None):
        super().__init__(message)
        self.step = step


class AlignmentError(DomainError):
    """A time does not fall on the grid of the path it refers to."""


class VertexCollisionError(DomainError):
    """A query point coincides with a vertex of the convex minorant."""


class LongRunSlopeUndefinedError(DomainError):
    """The model has no almost sure long-run slope lim X_t / t."""
