"""Two-parameter Mittag-Leffler function E_{mu,nu}(x) for real x."""

from __future__ import annotations

import math
import numbers
from dataclasses import asdict, dataclass

from ._backend import kernels
from ._consts import NO_CONVERGENCE, OVERFLOW, TAIL_SAFETY
from .errors import (
    ConvergenceError,
    DomainError,
    NumericalOverflowError,
    TailBoundNotApplicableError,
)
from .gamma import gamma_minimum

DEFAULT_K_MAX = 10_000
X_ABS_MAX = 1e6
TOL_MIN, TOL_MAX = 1e-15, 1e-3


@dataclass(frozen=True)
class MLParams:
    mu: float
    nu: float

    def __post_init__(self) -> None:
        for name in ("mu", "nu"):
            v = getattr(self, name)
            if not (isinstance(v, numbers.Real) and math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be finite and > 0, got {v!r}")


@dataclass(frozen=True)
class EvalResult:
    """A series value with its truncation index and tail certificate.

    ``certified`` is False only for the heuristic stopping rule used when the
    tail cannot be bounded rigorously (repeated multinomial exponents); then
    ``tail_bound`` is an estimate, not a bound.
    """

    value: float
    truncation_k: int
    tail_bound: float
    terms_used: int
    certified: bool = True

    def to_dict(self) -> dict:
        return asdict(self)


def _check_tolerance(tolerance: float, lo: float, hi: float) -> float:
    tolerance = float(tolerance)
    if not (lo <= tolerance <= hi):
        raise DomainError(f"tolerance must lie in [{lo:g}, {hi:g}], got {tolerance!r}")
    return tolerance


def eval_classic(
    p: MLParams, x: float, tolerance: float = 1e-12, k_max: int = DEFAULT_K_MAX
) -> EvalResult:
    """Sum x**k / Gamma(mu k + nu) until the certified remainder is <= tolerance.

    Terms are exponentiated from log-magnitudes with the sign of x**k applied
    afterwards, and accumulated with compensated summation. For x < 0 the
    log-magnitudes are formed in double-double so that each alternating term
    is accurately rounded before cancellation.
    """
    x = float(x)
    if not math.isfinite(x) or abs(x) > X_ABS_MAX:
        raise DomainError(f"|x| must be <= {X_ABS_MAX:g}, got {x!r}")
    tolerance = _check_tolerance(tolerance, TOL_MIN, TOL_MAX)
    x0 = gamma_minimum().x0
    value, k, tail, status = kernels.classic_series(
        float(p.mu), float(p.nu), x, tolerance, int(k_max), x0, 0.0, True, x < 0.0
    )
    if status == OVERFLOW:
        raise NumericalOverflowError(
            f"term {k} of E_{{{p.mu},{p.nu}}}({x}) exceeds the double-precision range"
        )
    if status == NO_CONVERGENCE:
        raise ConvergenceError(
            f"E_{{{p.mu},{p.nu}}}({x}) not certified to {tolerance:g} within {k_max} terms"
        )
    return EvalResult(value=value, truncation_k=k, tail_bound=tail, terms_used=k + 1)


def classic_tail_bound(p: MLParams, x: float, from_k: int) -> float:
    """Upper bound on sum_{k >= from_k} |x|**k / Gamma(mu k + nu).

    Requires mu*from_k + nu > x0 + mu and a leading term ratio q < 1; the
    remainder is then dominated by the geometric series term(from_k) / (1 - q).
    """
    if int(from_k) != from_k or from_k < 1:
        raise DomainError(f"from_k must be a positive integer, got {from_k!r}")
    x = abs(float(x))
    if x == 0.0:
        return 0.0
    mu, nu = float(p.mu), float(p.nu)
    a = mu * from_k + nu
    if a <= gamma_minimum().x0 + mu:
        raise TailBoundNotApplicableError(
            f"mu*from_k + nu = {a!r} has not passed the minimum of Gamma"
        )
    lg = kernels.lgamma
    lq = math.log(x) + lg(a) - lg(a + mu)
    if lq >= 0.0:
        raise TailBoundNotApplicableError(f"term ratio exp({lq!r}) is not below one at k={from_k}")
    lb = from_k * math.log(x) - lg(a) - math.log1p(-math.exp(lq)) + TAIL_SAFETY
    try:
        return math.exp(lb)
    except OverflowError:
        return math.inf


def mittag_leffler(mu: float, nu: float, x: float, tolerance: float = 1e-12) -> float:
    """Convenience wrapper returning only the value of E_{mu,nu}(x)."""
    return eval_classic(MLParams(mu, nu), x, tolerance).value
