"""Multinomial Mittag-Leffler function.

    E_{(mu_1..mu_n),gamma}(z) = sum_k sum_{l_1+..+l_n=k} (k; l) prod z_i**l_i
                                / Gamma(gamma + sum mu_i l_i)

The outer series is truncated at the first K whose remainder is certified
below the tolerance by the estimate itself: the degree-k block is bounded by
c_safe * r**k / Gamma(gamma + mu_min k) with r = sum |z_i|, so the tail of the
multinomial series is c_safe times the tail of E_{mu_min,gamma}(r).
"""

from __future__ import annotations

import math
import numbers
from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._backend import kernels
from ._consts import LOG_OVERFLOW, OK
from ._dd import dd_lgamma, dd_log
from .classic import EvalResult, MLParams, classic_tail_bound
from .combinatorics import DEFAULT_TERM_BUDGET, check_budget
from .errors import ConvergenceError, DomainError, NumericalOverflowError
from .estimate import compute_constants
from .gamma import gamma_minimum

DEFAULT_K_MAX = 500
N_MAX = 8
Z_ABS_SUM_MAX = 100.0
TOL_MIN, TOL_MAX = 1e-14, 1e-3
# Heuristic stop: this many consecutive degree blocks below tolerance.
_QUIET_BLOCKS = 3


@dataclass(frozen=True)
class MultiMLParams:
    mus: tuple[float, ...]
    gamma_param: float

    def __post_init__(self) -> None:
        mus = tuple(float(m) for m in self.mus)
        object.__setattr__(self, "mus", mus)
        if not mus:
            raise DomainError("at least one exponent mu is required")
        for m in mus:
            if not (math.isfinite(m) and m > 0):
                raise DomainError(f"every mu must be finite and > 0, got {m!r}")
        g = self.gamma_param
        if not (isinstance(g, numbers.Real) and math.isfinite(g) and g > 0):
            raise DomainError(f"gamma must be finite and > 0, got {g!r}")
        object.__setattr__(self, "gamma_param", float(g))

    @property
    def n(self) -> int:
        return len(self.mus)

    @property
    def strictly_ascending(self) -> bool:
        return all(a < b for a, b in zip(self.mus, self.mus[1:]))

    @property
    def distinct(self) -> bool:
        return len(set(self.mus)) == len(self.mus)

    def require_ascending(self) -> None:
        if not self.strictly_ascending:
            raise DomainError(f"exponents must be strictly ascending, got {self.mus!r}")

    def sorted(self) -> MultiMLParams:
        return MultiMLParams(tuple(sorted(self.mus)), self.gamma_param)


def _as_z(p: MultiMLParams, z: Sequence[float]) -> np.ndarray:
    arr = np.asarray(z, dtype=np.float64).reshape(-1)
    if arr.shape[0] != p.n:
        raise DomainError(f"expected {p.n} arguments z, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("z must be finite")
    return arr


class _Active:
    """The nonzero coordinates of z, in log-magnitude/sign form.

    With any negative coordinate the terms carry mixed signs, so the logs are
    kept in double-double (hi, lo) pairs and every term is accurately rounded.
    """

    def __init__(self, p: MultiMLParams, z: np.ndarray, precise: bool | None = None):
        keep = z != 0.0
        az = np.abs(z[keep])
        self.neg = z[keep] < 0.0
        self.mus = np.asarray(p.mus, dtype=np.float64)[keep]
        self.m = int(keep.sum())
        self.gamma = p.gamma_param
        self.precise = bool(self.neg.any()) if precise is None else bool(precise)
        if self.precise:
            pairs = np.array([dd_log(float(v), 0.0) for v in az]).reshape(-1, 2)
            self.lnz, self.lnz_lo = pairs[:, 0].copy(), pairs[:, 1].copy()
        else:
            self.lnz = np.log(az)
            self.lnz_lo = np.zeros_like(self.lnz)

    def logfact(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        return _logfact_dd(k) if self.precise else _logfact(k)

    def partial_sum(self, k_lo: int, k_hi: int, logfact: tuple[np.ndarray, np.ndarray]):
        s, sa, count, max_log = kernels.partial_sum(
            k_lo, k_hi, self.lnz, self.lnz_lo, self.neg, self.mus, self.gamma,
            logfact[0], logfact[1], self.precise,
        )
        if max_log > LOG_OVERFLOW:
            raise NumericalOverflowError(
                f"a term of degree <= {k_hi} exceeds the double-precision range"
            )
        return s, sa, count


@lru_cache(maxsize=32)
def _logfact(k: int) -> tuple[np.ndarray, np.ndarray]:
    """ln j! for j = 0..k, with a zero low part."""
    hi = kernels.lgamma_array(np.arange(1.0, k + 2.0))
    return hi, np.zeros_like(hi)


@lru_cache(maxsize=32)
def _logfact_dd(k: int) -> tuple[np.ndarray, np.ndarray]:
    """ln j! for j = 0..k as double-double (hi, lo) arrays."""
    pairs = np.array([dd_lgamma(j + 1.0, 0.0) for j in range(k + 1)]).reshape(-1, 2)
    return pairs[:, 0].copy(), pairs[:, 1].copy()


def term_block(
    p: MultiMLParams, z: Sequence[float], k: int, budget: int = DEFAULT_TERM_BUDGET
) -> float:
    """The degree-k block sum_{|l|=k} (k; l) prod z_i**l_i / Gamma(gamma + sum mu_i l_i)."""
    if int(k) != k or k < 0:
        raise DomainError(f"k must be a nonnegative integer, got {k!r}")
    k = int(k)
    act = _Active(p, _as_z(p, z))
    if act.m == 0:
        return math.exp(-kernels.lgamma(p.gamma_param)) if k == 0 else 0.0
    check_budget(math.comb(k + act.m - 1, act.m - 1), budget)
    return act.partial_sum(k, k, act.logfact(k))[0]


def multinomial_partial_sum(
    p: MultiMLParams, z: Sequence[float], k_max: int, budget: int = DEFAULT_TERM_BUDGET
) -> float:
    """Sum of all blocks of degree 0..k_max, no truncation logic."""
    act = _Active(p, _as_z(p, z))
    if act.m == 0:
        return math.exp(-kernels.lgamma(p.gamma_param))
    check_budget(math.comb(k_max + act.m, act.m), budget)
    return act.partial_sum(0, int(k_max), act.logfact(int(k_max)))[0]


def multinomial_tail_bound(p: MultiMLParams, z: Sequence[float], from_k: int) -> float:
    """c_safe * (tail of E_{mu_1,gamma} at sum |z_i| from from_k on)."""
    p.require_ascending()
    r = float(np.abs(_as_z(p, z)).sum())
    if r == 0.0:
        if int(from_k) != from_k or from_k < 1:
            raise DomainError(f"from_k must be a positive integer, got {from_k!r}")
        return 0.0
    c = compute_constants(p)
    return c.c_safe * classic_tail_bound(MLParams(p.mus[0], p.gamma_param), r, from_k)


def eval_multinomial(
    p: MultiMLParams,
    z: Sequence[float],
    tolerance: float = 1e-12,
    k_max: int = DEFAULT_K_MAX,
    budget: int = DEFAULT_TERM_BUDGET,
    precise: bool | None = None,
) -> EvalResult:
    """Evaluate the multinomial function to absolute accuracy ``tolerance``.

    Distinct exponents (in any order) give a certified result: the truncation
    index is chosen up front from the tail certificate, then every composition
    of every degree up to it is summed in one ordered pass. Repeated exponents
    fall back to stopping after three consecutive degree blocks whose absolute
    sums are below tolerance, and the result is marked uncertified.

    ``precise`` selects double-double term logs; by default they are used
    exactly when some z_i is negative. Turning them off is about 7x faster
    and only costs accuracy when the series cancels.
    """
    zz = _as_z(p, z)
    if p.n > N_MAX:
        raise DomainError(f"at most {N_MAX} coordinates are supported, got {p.n}")
    r = float(np.abs(zz).sum())
    if r > Z_ABS_SUM_MAX:
        raise DomainError(f"sum |z_i| must be <= {Z_ABS_SUM_MAX:g}, got {r!r}")
    tolerance = float(tolerance)
    if not (TOL_MIN <= tolerance <= TOL_MAX):
        raise DomainError(f"tolerance must lie in [{TOL_MIN:g}, {TOL_MAX:g}], got {tolerance!r}")

    act = _Active(p, zz, precise)
    if act.m == 0:
        return EvalResult(math.exp(-kernels.lgamma(p.gamma_param)), 0, 0.0, 1)
    if not p.distinct:
        return _eval_uncertified(act, tolerance, k_max, budget)

    # The estimate only depends on the multiset of exponents.
    c = compute_constants(p.sorted())
    _, K, tail, status = kernels.classic_series(
        min(p.mus), p.gamma_param, r, tolerance, int(k_max),
        gamma_minimum().x0, math.log(c.c_safe), False, False,
    )
    if status != OK:
        raise ConvergenceError(
            f"multinomial series not certified to {tolerance:g} within {k_max} degrees"
        )
    check_budget(math.comb(K + act.m, act.m), budget)
    value, _, count = act.partial_sum(0, K, act.logfact(K))
    return EvalResult(value=value, truncation_k=K, tail_bound=tail, terms_used=count)


def _eval_uncertified(act: _Active, tolerance: float, k_max: int, budget: int) -> EvalResult:
    logfact = act.logfact(k_max)
    blocks: list[float] = []
    used = 0
    quiet = 0
    for k in range(k_max + 1):
        check_budget(math.comb(k + act.m - 1, act.m - 1), budget, used)
        s, sa, count = act.partial_sum(k, k, logfact)
        blocks.append(s)
        used += count
        quiet = quiet + 1 if sa < tolerance else 0
        if quiet == _QUIET_BLOCKS:
            return EvalResult(math.fsum(blocks), k, sa, used, certified=False)
    raise ConvergenceError(f"multinomial series did not settle within {k_max} degrees")

