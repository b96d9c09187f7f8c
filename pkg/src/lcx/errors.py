"""Exception types shared across the package."""


class LcxError(Exception):
    """Base class for all package errors."""


class SpaceMismatchError(LcxError):
    """A vector, seminorm, or map was used with the wrong space."""


class SpecError(LcxError):
    """A problem description is malformed; the message names the offending field."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class NonFiniteValueError(LcxError):
    """An evaluation produced NaN or infinity."""


class CapReachedError(LcxError):
    """An iteration or refinement cap was hit before the stopping rule fired.

    Carries enough state for the caller to report or accept a partial result.
    """

    def __init__(self, message: str, *, best=None, last_two=None):
        self.best = best
        self.last_two = last_two
        super().__init__(message)


class ConstructionError(LcxError):
    """An internal invariant of the approximant construction failed (a bug,
    not bad input)."""
