"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class MultiMLError(Exception):
    """Base class for all errors raised by multiml."""


class DomainError(MultiMLError, ValueError):
    """An argument lies outside the domain of the requested function."""


class NumericalOverflowError(MultiMLError, OverflowError):
    """A value or a series term would not fit in double precision."""


class ConvergenceError(MultiMLError):
    """An iteration or series did not converge within its budget."""


class BudgetExceededError(MultiMLError):
    """The number of enumerated compositions would exceed the term budget."""


class TailBoundNotApplicableError(MultiMLError):
    """The geometric tail certificate cannot be applied at this index."""
