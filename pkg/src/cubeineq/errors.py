"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of a function."""


class UsageError(ValueError):
    """A request is not meaningful (unsupported exponents, sizes or methods)."""


class NumericalFailure(ArithmeticError):
    """A numerical procedure did not reach its accuracy target.

    The best available estimate is attached as ``estimate`` so callers can
    still report it.
    """

    def __init__(self, message: str, estimate=None):
        super().__init__(message)
        self.estimate = estimate
