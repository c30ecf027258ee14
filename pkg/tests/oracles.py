"""High-precision reference implementations, independent of the package.

Coefficients and powers of z are exact (z is converted from its binary value
without rounding); only Gamma is approximated, at 60 significant digits,
which is some 45 digits beyond anything the tests compare against.
Compositions are enumerated here by stars and bars, not by the package's
walker.
"""

from __future__ import annotations

import itertools
import math

import mpmath

DPS = 60
mpmath.mp.dps = DPS


def mpf(x) -> mpmath.mpf:
    return mpmath.mpf(x)


def rgamma(x) -> mpmath.mpf:
    return mpmath.rgamma(mpf(x))


def loggamma(x) -> mpmath.mpf:
    return mpmath.loggamma(mpf(x))


def gamma_argmin() -> mpmath.mpf:
    """Root of the digamma function near 1.46."""
    return mpmath.findroot(mpmath.digamma, mpf("1.46"))


def stars_and_bars(k: int, n: int):
    """All weak compositions of k into n parts, order unspecified."""
    for bars in itertools.combinations(range(k + n - 1), n - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(k + n - 1 - prev - 1)
        yield tuple(parts)


def multinomial(parts) -> int:
    return math.factorial(sum(parts)) // math.prod(math.factorial(p) for p in parts)


def classic_term(mu, nu, x, k) -> mpmath.mpf:
    return mpf(x) ** k * rgamma(mpf(mu) * k + mpf(nu))


def classic_partial(mu, nu, x, k_max: int) -> mpmath.mpf:
    return mpmath.fsum(classic_term(mu, nu, x, k) for k in range(k_max + 1))


def classic_abs_tail(mu, nu, x, k_from: int, k_to: int) -> mpmath.mpf:
    return mpmath.fsum(abs(classic_term(mu, nu, x, k)) for k in range(k_from, k_to + 1))


def classic_value(mu, nu, x, eps=mpf("1e-40")) -> mpmath.mpf:
    """Sum until terms stay below eps for 20 consecutive indices past the peak."""
    s = mpf(0)
    quiet = 0
    k = 0
    while quiet < 20:
        t = classic_term(mu, nu, x, k)
        s += t
        arg = mpf(mu) * k + mpf(nu)
        quiet = quiet + 1 if (abs(t) < eps and arg > 2) else 0
        k += 1
    return s


def block(mus, gamma, z, k: int, absolute: bool = False) -> mpmath.mpf:
    zs = [mpf(v) for v in z]
    if absolute:
        zs = [abs(v) for v in zs]
    total = mpf(0)
    for parts in stars_and_bars(k, len(zs)):
        num = mpf(multinomial(parts))
        arg = mpf(gamma)
        for zi, mi, li in zip(zs, mus, parts):
            num *= zi**li
            arg += mpf(mi) * li
        total += num * rgamma(arg)
    return total


def multinomial_partial(mus, gamma, z, k_max: int) -> mpmath.mpf:
    return mpmath.fsum(block(mus, gamma, z, k) for k in range(k_max + 1))


def multinomial_abs_tail(mus, gamma, z, k_from: int, k_to: int) -> mpmath.mpf:
    return mpmath.fsum(block(mus, gamma, z, k, absolute=True) for k in range(k_from, k_to + 1))


def rel_err(value: float, ref) -> float:
    ref = mpf(ref)
    return float(abs(mpf(value) - ref) / abs(ref))
