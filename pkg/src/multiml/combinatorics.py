"""Weak compositions and multinomial coefficients."""

from __future__ import annotations

import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._backend import kernels
from .errors import BudgetExceededError, DomainError

DEFAULT_TERM_BUDGET = 10**8


@dataclass(frozen=True)
class Composition:
    """A weak composition: ``parts`` are nonnegative and sum to ``degree``."""

    parts: tuple[int, ...]
    degree: int

    def __post_init__(self) -> None:
        if len(self.parts) < 1:
            raise DomainError("a composition needs at least one part")
        if any(int(p) != p or p < 0 for p in self.parts):
            raise DomainError(f"parts must be nonnegative integers, got {self.parts!r}")
        if sum(self.parts) != self.degree:
            raise DomainError(f"parts {self.parts!r} do not sum to degree {self.degree}")

    @classmethod
    def of(cls, parts: Sequence[int]) -> Composition:
        parts = tuple(int(p) for p in parts)
        return cls(parts, sum(parts))

    @property
    def n(self) -> int:
        return len(self.parts)


def count_compositions(k: int, n: int) -> int:
    """Number of weak compositions of k into n parts, binomial(k+n-1, n-1)."""
    _check_kn(k, n)
    return math.comb(k + n - 1, n - 1)


def _check_kn(k: int, n: int) -> None:
    if int(k) != k or k < 0:
        raise DomainError(f"k must be a nonnegative integer, got {k!r}")
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")


def check_budget(count: int, budget: int, used: int = 0) -> None:
    if used + count > budget:
        raise BudgetExceededError(
            f"{used + count} compositions would exceed the term budget of {budget}"
        )


def compositions(k: int, n: int, budget: int = DEFAULT_TERM_BUDGET) -> Iterator[Composition]:
    """Yield the weak compositions of k into n parts in reverse-lex order.

    >>> [c.parts for c in compositions(2, 2)]
    [(2, 0), (1, 1), (0, 2)]
    """
    _check_kn(k, n)
    check_budget(count_compositions(k, n), budget)
    return _walk(int(k), int(n))


def _walk(k: int, n: int) -> Iterator[Composition]:
    parts = [0] * n
    parts[0] = k
    while True:
        yield Composition(tuple(parts), k)
        tail = parts[-1]
        parts[-1] = 0
        for j in range(n - 2, -1, -1):
            if parts[j] > 0:
                parts[j] -= 1
                parts[j + 1] = tail + 1
                break
        else:
            return


def compositions_array(k: int, n: int, budget: int = DEFAULT_TERM_BUDGET) -> np.ndarray:
    """All compositions of k into n parts as an int64 array, one per row."""
    _check_kn(k, n)
    check_budget(count_compositions(k, n), budget)
    return kernels.compositions_array(int(k), int(n))


def multinomial_exact(c: Composition) -> int:
    """k! / (l_1! ... l_n!) in exact integer arithmetic."""
    result = 1
    running = 0
    for part in c.parts:
        running += part
        result *= math.comb(running, part)
    return result


def log_multinomial(c: Composition) -> float:
    """ln of the multinomial coefficient via log_gamma."""
    lg = kernels.lgamma
    return lg(c.degree + 1.0) - math.fsum(lg(p + 1.0) for p in c.parts)


def identity_deviation(z: Sequence[float], k: int) -> Fraction:
    """Exact relative deviation between the composition sum and (sum z)**k.

    Inputs are taken as the exact binary values of the doubles, so both sides
    are computed in integer arithmetic after clearing the common power-of-two
    denominator. Any nonzero result means the enumeration or the coefficients
    are wrong. When (sum z)**k is zero the absolute deviation is returned.
    """
    fracs = [Fraction(float(v)) for v in z]
    denom = 1
    for f in fracs:
        denom = max(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]

    lhs = 0
    for c in compositions(k, len(ints)):
        term = multinomial_exact(c)
        for a, l in zip(ints, c.parts):
            if l:
                term *= a**l
        lhs += term
    rhs = sum(ints) ** k
    if rhs == 0:
        return Fraction(abs(lhs - rhs), denom**k)
    return Fraction(abs(lhs - rhs), abs(rhs))
