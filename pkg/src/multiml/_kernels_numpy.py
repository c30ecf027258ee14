"""Pure-numpy kernels, used when numba is missing or disabled.

Same signatures and return conventions as ``_kernels_numba``. Work is
vectorized per degree k (or per chunk of k); sums use ``math.fsum``, so
results agree with the numba path to rounding, not bit for bit.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from ._consts import LOG_OVERFLOW, NO_CONVERGENCE, OK, OVERFLOW, TAIL_SAFETY
from ._dd import dd_add, dd_exp_to_double, dd_lgamma, dd_log, dd_mul, two_prod
from ._scalar import (
    HALF_LOG_TWO_PI,
    LANCZOS_COEF,
    LANCZOS_G,
    LGAMMA1P_COEF,
    SERIES_RADIUS,
    STIRLING_COEF,
    STIRLING_MIN,
)
from ._scalar import lgamma as lgamma  # scalar path stays plain Python

_CHUNK = 256


def lgamma_array(x):
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)

    # Lanczos branch on the lifted argument; series branch on the offset.
    lift = x < 1.0 - SERIES_RADIUS
    near1 = (x >= 1.0 - SERIES_RADIUS) & (x <= 1.0 + SERIES_RADIUS)
    near2 = (x >= 2.0 - SERIES_RADIUS) & (x <= 2.0 + SERIES_RADIUS)
    tiny = x < SERIES_RADIUS
    series = tiny | near1 | near2
    big = x >= STIRLING_MIN

    e = np.where(tiny, x, np.where(near1, x - 1.0, x - 2.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        shift = np.where(lift, -np.log(x), 0.0)
        shift = np.where(near2, np.log1p(e), shift)

    if series.any():
        es = e[series]
        acc = np.zeros_like(es)
        for coef in LGAMMA1P_COEF[::-1]:
            acc = acc * es + coef
        out[series] = acc * es + shift[series]

    if big.any():
        y = x[big]
        inv = 1.0 / y
        inv2 = inv * inv
        c = np.zeros_like(y)
        for coef in STIRLING_COEF[::-1]:
            c = c * inv2 + coef
        out[big] = (y - 0.5) * np.log(y) - y + HALF_LOG_TWO_PI + c * inv

    lanczos = ~(series | big)
    if lanczos.any():
        y = np.where(lift, x + 1.0, x)[lanczos]
        z = y - 1.0
        a = np.full_like(z, LANCZOS_COEF[0])
        for i in range(1, LANCZOS_COEF.shape[0]):
            a += LANCZOS_COEF[i] / (z + i)
        t = z + LANCZOS_G + 0.5
        out[lanczos] = (
            HALF_LOG_TWO_PI + (z + 0.5) * np.log(t) - t + np.log(a) + shift[lanczos]
        )
    return out


def _precise_classic_term(mu, nu, lxh, lxl, k):
    ph, pl = two_prod(mu, float(k))
    ah, al = dd_add(ph, pl, nu, 0.0)
    lh, ll = dd_mul(float(k), 0.0, lxh, lxl)
    gh, gl = dd_lgamma(ah, al)
    lh, ll = dd_add(lh, ll, -gh, -gl)
    return dd_exp_to_double(lh, ll)


def classic_series(mu, nu, x, tol, kmax, x0, log_scale, check_overflow, precise):
    lg0 = lgamma(nu)
    if x == 0.0:
        return math.exp(-lg0), 0, 0.0, OK
    lx = math.log(abs(x))
    if precise:
        lxh, lxl = dd_log(abs(x), 0.0)
    ltol = math.log(tol)
    terms = []
    for start in range(0, kmax + 1, _CHUNK):
        k = np.arange(start, min(start + _CHUNK, kmax + 1), dtype=np.float64)
        lg = lgamma_array(mu * k + nu)
        lt = k * lx - lg
        a = mu * (k + 1.0) + nu
        lg_next = lgamma_array(a)
        lq = lx + lg_next - lgamma_array(a + mu)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            ok_ratio = (a > x0 + mu) & (lq < 0.0)
            lb = (k + 1.0) * lx - lg_next - np.log1p(-np.exp(np.minimum(lq, 0.0)))
        lb = lb + log_scale + TAIL_SAFETY
        done = np.flatnonzero(ok_ratio & (lb <= ltol))
        stop = done[0] if done.size else lt.shape[0] - 1

        if check_overflow:
            bad = np.flatnonzero(lt[: stop + 1] > LOG_OVERFLOW)
            if bad.size:
                return math.fsum(terms), int(k[bad[0]]), math.inf, OVERFLOW

            sign = np.where((k[: stop + 1] % 2 == 1) & (x < 0.0), -1.0, 1.0)
            if precise:
                mag = np.array(
                    [_precise_classic_term(mu, nu, lxh, lxl, int(j)) for j in k[: stop + 1]]
                )
            else:
                mag = np.exp(lt[: stop + 1])
            terms.extend((sign * mag).tolist())
        if done.size:
            value = math.fsum(terms) if check_overflow else math.nan
            return value, int(k[stop]), math.exp(lb[stop]), OK
    value = math.fsum(terms) if check_overflow else math.nan
    return value, kmax, math.inf, NO_CONVERGENCE


def n_compositions(k, n):
    return float(math.comb(k + n - 1, n - 1))


@lru_cache(maxsize=512)
def _compositions_cached(k, n):
    if n == 1:
        out = np.array([[k]], dtype=np.int64)
    else:
        blocks = []
        for first in range(k, -1, -1):
            rest = _compositions_cached(k - first, n - 1)
            head = np.full((rest.shape[0], 1), first, dtype=np.int64)
            blocks.append(np.hstack([head, rest]))
        out = np.vstack(blocks)
    out.setflags(write=False)
    return out


def compositions_array(k, n):
    return _compositions_cached(int(k), int(n)).copy()


def _precise_terms(comps, k, lnz, lnz_lo, mus, gamma, logfact, logfact_lo):
    out = np.empty(comps.shape[0])
    for r in range(comps.shape[0]):
        mh, ml = logfact[k], logfact_lo[k]
        zh, zl = 0.0, 0.0
        ah, al = gamma, 0.0
        for i in range(comps.shape[1]):
            l = int(comps[r, i])
            if l == 0:
                continue
            mh, ml = dd_add(mh, ml, -logfact[l], -logfact_lo[l])
            ph, pl = dd_mul(float(l), 0.0, lnz[i], lnz_lo[i])
            zh, zl = dd_add(zh, zl, ph, pl)
            ph, pl = two_prod(mus[i], float(l))
            ah, al = dd_add(ah, al, ph, pl)
        lh, ll = dd_add(mh, ml, zh, zl)
        gh, gl = dd_lgamma(ah, al)
        lh, ll = dd_add(lh, ll, -gh, -gl)
        out[r] = dd_exp_to_double(lh, ll)
    return out


def partial_sum(k_lo, k_hi, lnz, lnz_lo, neg, mus, gamma, logfact, logfact_lo, precise):
    lnz = np.asarray(lnz, dtype=np.float64)
    neg = np.asarray(neg, dtype=bool)
    mus = np.asarray(mus, dtype=np.float64)
    n = lnz.shape[0]
    signed = []
    magnitudes = []
    count = 0
    max_log = -math.inf
    for k in range(k_lo, k_hi + 1):
        comps = _compositions_cached(k, n)
        lm = logfact[k] - logfact[comps].sum(axis=1)
        lt = lm + comps @ lnz - lgamma_array(gamma + comps @ mus)
        max_log = max(max_log, float(lt.max()))
        if max_log > LOG_OVERFLOW:
            return math.nan, math.nan, count + comps.shape[0], max_log
        if precise:
            mag = _precise_terms(comps, k, lnz, lnz_lo, mus, gamma, logfact, logfact_lo)
        else:
            mag = np.exp(lt)
        odd = (comps[:, neg].sum(axis=1) % 2) == 1
        signed.extend(np.where(odd, -mag, mag).tolist())
        magnitudes.extend(mag.tolist())
        count += comps.shape[0]
    return math.fsum(signed), math.fsum(magnitudes), count, max_log
