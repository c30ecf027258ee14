"""Gamma and log-gamma on the positive half-line, and the minimum of Gamma."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._backend import kernels
from ._scalar import LGAMMA1P_COEF
from .errors import ConvergenceError, DomainError, NumericalOverflowError

GAMMA_ARG_MAX = 170.0

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# ln Gamma(1 + e) coefficients extended far enough for |e| <= 0.6; past the
# tabulated zeta values zeta(k) = 1 + 2**-k + 3**-k + 4**-k to double precision.
_DIVDIFF_RADIUS = 0.6
_DIVDIFF_COEF = np.concatenate(
    [
        LGAMMA1P_COEF,
        [
            (-1.0) ** k * (1.0 + 2.0**-k + 3.0**-k + 4.0**-k) / k
            for k in range(LGAMMA1P_COEF.shape[0] + 1, 91)
        ],
    ]
)


def _check_positive(x: float, name: str = "x") -> float:
    try:
        x = float(x)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} must be a real number, got {x!r}") from exc
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name} must be finite and > 0, got {x!r}")
    return x


def log_gamma(x: float) -> float:
    """ln Gamma(x) for finite x > 0."""
    return kernels.lgamma(_check_positive(x))


def gamma(x: float) -> float:
    """Gamma(x) for 0 < x <= 170, computed as exp(log_gamma(x))."""
    x = _check_positive(x)
    if x > GAMMA_ARG_MAX:
        raise NumericalOverflowError(f"Gamma({x!r}) overflows double precision (x > 170)")
    return math.exp(kernels.lgamma(x))


def _lgamma_divided_difference(c: float, d: float) -> float:
    """(ln Gamma(d) - ln Gamma(c)) / (d - c) for 1 <= c, d <= 1.6.

    Uses e**k - f**k = (e - f) * h_k(e, f) with h_k the complete homogeneous
    polynomial, so the difference keeps full relative accuracy even when c and
    d straddle the minimum and the two log-gamma values agree to 1e-17.
    """
    e, f = d - 1.0, c - 1.0
    h = 1.0
    f_pow = 1.0
    acc = _DIVDIFF_COEF[0]
    for coef in _DIVDIFF_COEF[1:]:
        f_pow *= f
        h = e * h + f_pow
        acc += coef * h
    return acc


def _below(c: float, d: float, fc: float, fd: float) -> bool:
    """True when Gamma(c) < Gamma(d), for c < d."""
    if 1.0 <= c and d <= 1.0 + _DIVDIFF_RADIUS:
        return _lgamma_divided_difference(c, d) > 0.0
    return fc < fd


@dataclass(frozen=True)
class GammaMinimum:
    x0: float
    gamma_x0: float


def find_gamma_minimum(tolerance: float = 1e-10, max_evaluations: int = 10_000) -> GammaMinimum:
    """Locate the unique minimum of Gamma on (0, inf) by golden-section search.

    The search runs on log_gamma over the bracket [1, 2] and stops once the
    bracket is narrower than ``tolerance``. Near the minimum two log-gamma
    values differ by less than their rounding error once the probes are ~1e-8
    apart, so comparisons inside [1, 1.6] use a divided difference instead of
    subtracting rounded values.
    """
    if not (0.0 < tolerance <= 1e-2):
        raise DomainError(f"tolerance must lie in (0, 1e-2], got {tolerance!r}")
    f = kernels.lgamma
    a, b = 1.0, 2.0
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    evals = 2
    while b - a > tolerance:
        if evals >= max_evaluations:
            raise ConvergenceError(
                f"golden-section search used {evals} evaluations without reaching {tolerance!r}"
            )
        if _below(c, d, fc, fd):
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
        evals += 1
    x0 = 0.5 * (a + b)
    return GammaMinimum(x0=x0, gamma_x0=math.exp(f(x0)))


@lru_cache(maxsize=1)
def gamma_minimum() -> GammaMinimum:
    """Cached minimum, bracketed to 1e-13; shared by every bound constant."""
    return find_gamma_minimum(1e-13)
