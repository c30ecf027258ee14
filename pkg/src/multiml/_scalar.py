"""Scalar log-gamma written in plain ``math`` so numba can compile it unchanged.

Three approximations are stitched together:

* Stirling's series with eight correction terms for x >= 7 (cheapest, and
  the remainder is below 1e-16 there);
* the shifted Lanczos sum (g = 7, 9 coefficients) elsewhere away from the
  zeros of ln Gamma at 1 and 2, accurate to a few ulp in absolute terms;
* the Taylor series of ln Gamma(1 + e) in powers of e (coefficients built from
  Euler's constant and zeta values) near 1 and 2, so that the *relative*
  error stays small where ln Gamma itself vanishes.

Small arguments are lifted with Gamma(x) = Gamma(x + 1) / x. No reflection:
callers only ever pass positive arguments.
"""

from __future__ import annotations

import math

import numpy as np

LANCZOS_G = 7.0
LANCZOS_COEF = np.array(
    [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ]
)
HALF_LOG_TWO_PI = 0.91893853320467274178

# c[j] multiplies e**(j + 1) in ln Gamma(1 + e); c[0] = -Euler gamma,
# c[j] = (-1)**(j + 1) * zeta(j + 1) / (j + 1) for j >= 1.
_ZETA = (
    1.6449340668482264, 1.2020569031595942, 1.0823232337111381, 1.03692775514337,
    1.0173430619844492, 1.008349277381923, 1.0040773561979444, 1.0020083928260821,
    1.000994575127818, 1.0004941886041194, 1.000246086553308, 1.0001227133475785,
    1.0000612481350588, 1.000030588236307, 1.0000152822594086, 1.0000076371976379,
    1.000003817293265, 1.0000019082127165, 1.0000009539620338, 1.0000004769329869,
    1.0000002384505027, 1.000000119219926, 1.000000059608189, 1.0000000298035034,
    1.0000000149015549, 1.0000000074507118, 1.000000003725334, 1.0000000018626598,
    1.0000000009313275, 1.0000000004656628, 1.000000000232831, 1.0000000001164155,
    1.0000000000582077, 1.0000000000291038, 1.000000000014552, 1.000000000007276,
    1.000000000003638, 1.000000000001819, 1.0000000000009095,
)
LGAMMA1P_COEF = np.array(
    [-0.5772156649015329]
    + [(-1.0) ** k * z / k for k, z in zip(range(2, 2 + len(_ZETA)), _ZETA)]
)

SERIES_RADIUS = 0.3

STIRLING_MIN = 7.0
# B_2j / (2j (2j - 1)), j = 1..8
STIRLING_COEF = np.array(
    [
        0.08333333333333333, -0.002777777777777778, 0.0007936507936507937,
        -0.0005952380952380953, 0.0008417508417508417, -0.0019175269175269176,
        0.00641025641025641, -0.029550653594771242,
    ]
)


def lgamma(x):
    """ln Gamma(x) for finite x > 0. No argument checking.

    Self-contained (no helper calls) so the same body compiles under numba.
    """
    if x >= STIRLING_MIN:
        inv = 1.0 / x
        inv2 = inv * inv
        c = 0.0
        for j in range(STIRLING_COEF.shape[0] - 1, -1, -1):
            c = c * inv2 + STIRLING_COEF[j]
        return (x - 0.5) * math.log(x) - x + HALF_LOG_TWO_PI + c * inv

    shift = 0.0
    series = True
    e = 0.0
    y = x
    if x < SERIES_RADIUS:
        e = x
        shift = -math.log(x)
    elif x < 1.0 - SERIES_RADIUS:
        series = False
        y = x + 1.0
        shift = -math.log(x)
    elif x <= 1.0 + SERIES_RADIUS:
        e = x - 1.0
    elif 2.0 - SERIES_RADIUS <= x <= 2.0 + SERIES_RADIUS:
        e = x - 2.0
        shift = math.log1p(e)
    else:
        series = False

    if series:
        acc = 0.0
        for j in range(LGAMMA1P_COEF.shape[0] - 1, -1, -1):
            acc = acc * e + LGAMMA1P_COEF[j]
        return acc * e + shift

    z = y - 1.0
    a = LANCZOS_COEF[0]
    for i in range(1, LANCZOS_COEF.shape[0]):
        a += LANCZOS_COEF[i] / (z + i)
    t = z + LANCZOS_G + 0.5
    return HALF_LOG_TWO_PI + (z + 0.5) * math.log(t) - t + math.log(a) + shift
