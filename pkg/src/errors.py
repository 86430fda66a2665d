"""
Exception hierarchy for the recurrence toolkit.

Every domain failure derives from RecurrenceError, itself a ValueError, so callers
that already guard with ``except ValueError`` keep working.
"""

from typing import Optional


class RecurrenceError(ValueError):
    """Base class for all domain errors raised by the toolkit."""


class DegenerateParams(RecurrenceError):
    """Raised for (a, b) = (0, 0), where every denominator vanishes."""


class MixedModeError(RecurrenceError):
    """Raised when Exact and Float values meet in one computation."""


class NonFiniteValue(RecurrenceError):
    """Raised when a Float-mode input is NaN or infinite."""


class SingularDenominator(RecurrenceError):
    """Raised when an exact or floating denominator is zero."""


class UnsupportedBranch(RecurrenceError):
    """Raised when a formula is undefined for the requested parameter branch."""


class NotAdmissible(RecurrenceError):
    """Raised when an operation needs an admissible seed and gets a forbidden one."""

    def __init__(self, message: str, step: Optional[int] = None):
        super().__init__(message)
        self.step = step


class NotRegular(RecurrenceError):
    """Raised when an operation needs a regular (non-singular) seed."""


class NotInRange(RecurrenceError):
    """Raised when a parameter lies outside the range an operation covers."""


class TailNotYetGeometric(RecurrenceError):
    """Raised when the coefficient tail cannot yet be bounded by a geometric series."""


class OutOfHypothesis(RecurrenceError):
    """Raised when the hypotheses of a closed-form bound are not met."""


class NotPeriodicPoint(RecurrenceError):
    """Raised when a point does not satisfy a + b*p*q = 1."""


class NoPlottableData(RecurrenceError):
    """Raised when a sweep has no finite samples to draw."""


class ResourceLimitExceeded(RecurrenceError):
    """Raised when exact arithmetic outgrows the configured bit-size cap."""
