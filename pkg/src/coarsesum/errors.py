"""Exception types shared across the package."""

from __future__ import annotations


class CoarseError(Exception):
    """Base class for every error raised by this package."""


class SpecError(CoarseError, ValueError):
    """A partition description is invalid; the message names the offending field."""


class DomainError(CoarseError, ValueError):
    """A value does not belong to the partition's domain (wrong grid, below origin, ...)."""


class OutOfRangeError(CoarseError):
    """A value or cell index falls outside the partition's covered range.

    ``step`` carries the 1-based fold step at which the overflow happened,
    when the error surfaced inside a fold.
    """

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step
