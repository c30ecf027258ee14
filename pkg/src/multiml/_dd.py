"""Double-double arithmetic (value = hi + lo) for accurately rounded terms.

Series with alternating or mixed signs lose accuracy to cancellation in
proportion to the error of each rounded term. Forming the log-magnitude of a
term in double-double and exponentiating once brings each term to about one
ulp, which is what plain double-precision log-space evaluation cannot reach.

All helpers work on scalars and return (hi, lo) tuples. They are jitted when
numba is enabled and plain Python otherwise.
"""

from __future__ import annotations

import math

from ._flags import jit
from ._scalar import STIRLING_COEF as _STIRLING

_SPLITTER = 134217729.0  # 2**27 + 1
_SQRT_HALF = 0.7071067811865476

LN2_HI, LN2_LO = 0.6931471805599453, 2.3190468138462996e-17
HALF_LOG_TWO_PI_HI, HALF_LOG_TWO_PI_LO = 0.9189385332046728, -3.8782941580672414e-17

# Stirling correction terms are summed in plain double; at y >= 20 their
# total is below 5e-3 and the truncation error below 1e-24.
_STIRLING_MIN = 20.0


@jit
def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@jit
def quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


@jit
def two_prod(a, b):
    p = a * b
    t = _SPLITTER * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLITTER * b
    bh = t - (t - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


@jit
def dd_add(ah, al, bh, bl):
    s, e = two_sum(ah, bh)
    t, f = two_sum(al, bl)
    e += t
    s, e = quick_two_sum(s, e)
    e += f
    return quick_two_sum(s, e)


@jit
def dd_mul(ah, al, bh, bl):
    p, e = two_prod(ah, bh)
    e += ah * bl + al * bh
    return quick_two_sum(p, e)


@jit
def dd_div(ah, al, bh, bl):
    q1 = ah / bh
    ph, pl = dd_mul(q1, 0.0, bh, bl)
    rh, rl = dd_add(ah, al, -ph, -pl)
    q2 = rh / bh
    ph, pl = dd_mul(q2, 0.0, bh, bl)
    rh, rl = dd_add(rh, rl, -ph, -pl)
    q3 = rh / bh
    q1, q2 = quick_two_sum(q1, q2)
    return dd_add(q1, q2, q3, 0.0)


@jit
def dd_log(ah, al):
    """ln(a) for a > 0 via 2 atanh((m - 1)/(m + 1)) after binary scaling."""
    m, e = math.frexp(ah)
    if m < _SQRT_HALF:
        m *= 2.0
        e -= 1
    ml = math.ldexp(al, -e)
    nh, nl = dd_add(m, ml, -1.0, 0.0)
    dh, dl = dd_add(m, ml, 1.0, 0.0)
    sh, sl = dd_div(nh, nl, dh, dl)
    # |s| <= 0.172. The s**3 and s**5 terms stay in double-double (lnGamma
    # multiplies this log by up to ~1e4); the rest is below 4e-7 and is summed
    # in plain double.
    s2h, s2l = dd_mul(sh, sl, sh, sl)
    p3h, p3l = dd_mul(sh, sl, s2h, s2l)
    p5h, p5l = dd_mul(p3h, p3l, s2h, s2l)
    t3h, t3l = dd_div(p3h, p3l, 3.0, 0.0)
    t5h, t5l = dd_div(p5h, p5l, 5.0, 0.0)
    term = p5h * s2h
    tail = 0.0
    for j in range(7, 43, 2):
        tail += term / j
        term *= s2h
    rh, rl = dd_add(sh, sl, t3h, t3l)
    rh, rl = dd_add(rh, rl, t5h, t5l)
    rh, rl = dd_add(rh, rl, tail, 0.0)
    rh, rl = 2.0 * rh, 2.0 * rl
    eh, el = dd_mul(float(e), 0.0, LN2_HI, LN2_LO)
    return dd_add(rh, rl, eh, el)


@jit
def dd_lgamma(ah, al):
    """ln Gamma(a) for a > 0: upward shift to >= 20, then Stirling."""
    ph, pl = 1.0, 0.0
    yh, yl = ah, al
    shifted = False
    while yh < _STIRLING_MIN:
        ph, pl = dd_mul(ph, pl, yh, yl)
        yh, yl = dd_add(yh, yl, 1.0, 0.0)
        shifted = True
    lyh, lyl = dd_log(yh, yl)
    th, tl = dd_add(yh, yl, -0.5, 0.0)
    th, tl = dd_mul(th, tl, lyh, lyl)
    th, tl = dd_add(th, tl, -yh, -yl)
    th, tl = dd_add(th, tl, HALF_LOG_TWO_PI_HI, HALF_LOG_TWO_PI_LO)
    inv = 1.0 / yh
    inv2 = inv * inv
    corr = 0.0
    for j in range(_STIRLING.shape[0] - 1, -1, -1):
        corr = corr * inv2 + _STIRLING[j]
    th, tl = dd_add(th, tl, corr * inv, 0.0)
    if shifted:
        lph, lpl = dd_log(ph, pl)
        th, tl = dd_add(th, tl, -lph, -lpl)
    return th, tl


@jit
def dd_exp_to_double(h, l):
    """exp(h + l) rounded to double, first order in the low word."""
    e = math.exp(h)
    return e + e * l
