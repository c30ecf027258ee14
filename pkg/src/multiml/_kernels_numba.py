"""numba kernels. Must stay call-compatible with ``_kernels_numpy``."""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from ._consts import LOG_OVERFLOW, NO_CONVERGENCE, OK, OVERFLOW, TAIL_SAFETY
from ._dd import dd_add, dd_exp_to_double, dd_lgamma, dd_log, dd_mul, two_prod
from ._scalar import lgamma as _lgamma_py

lgamma = njit(cache=True)(_lgamma_py)


@njit(cache=True)
def lgamma_array(x):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = lgamma(x[i])
    return out


@njit(cache=True)
def _precise_classic_term(mu, nu, lxh, lxl, k):
    ph, pl = two_prod(mu, float(k))
    ah, al = dd_add(ph, pl, nu, 0.0)
    lh, ll = dd_mul(float(k), 0.0, lxh, lxl)
    gh, gl = dd_lgamma(ah, al)
    lh, ll = dd_add(lh, ll, -gh, -gl)
    return dd_exp_to_double(lh, ll)


@njit(cache=True)
def classic_series(mu, nu, x, tol, kmax, x0, log_scale, check_overflow, precise):
    """Sum x**k / Gamma(mu k + nu) until the scaled geometric tail is <= tol.

    Returns (value, last_k, tail, status). The tail certificate from index
    k + 1 is only tried once mu (k + 1) + nu > x0 + mu and the term ratio is
    below one. With ``check_overflow`` off only last_k and tail are
    meaningful (value is NaN); the tail test runs in log space and cannot
    overflow. ``precise`` forms each term's log in double-double.
    """
    lg = lgamma(nu)
    if x == 0.0:
        return math.exp(-lg), 0, 0.0, OK
    lx = math.log(abs(x))
    lxh, lxl = dd_log(abs(x), 0.0)
    neg = x < 0.0
    ltol = math.log(tol)
    s = 0.0
    c = 0.0
    for k in range(kmax + 1):
        lt = k * lx - lg
        if check_overflow and lt > LOG_OVERFLOW:
            return s + c, k, math.inf, OVERFLOW
        if precise:
            t = _precise_classic_term(mu, nu, lxh, lxl, k)
        else:
            t = math.exp(lt)
        if neg and k % 2 == 1:
            t = -t
        u = s + t
        if abs(s) >= abs(t):
            c += (s - u) + t
        else:
            c += (t - u) + s
        s = u

        a = mu * (k + 1) + nu
        lg_next = lgamma(a)
        if a > x0 + mu:
            lq = lx + lg_next - lgamma(a + mu)
            if lq < 0.0:
                lb = (k + 1) * lx - lg_next - math.log1p(-math.exp(lq)) + log_scale + TAIL_SAFETY
                if lb <= ltol:
                    value = s + c if check_overflow else math.nan
                    return value, k, math.exp(lb), OK
        lg = lg_next
    value = s + c if check_overflow else math.nan
    return value, kmax, math.inf, NO_CONVERGENCE


@njit(cache=True)
def n_compositions(k, n):
    """binomial(k + n - 1, n - 1) as float (callers compare it to a budget)."""
    c = 1.0
    for i in range(1, n):
        c = c * (k + i) / i
    return math.floor(c + 0.5)


@njit(cache=True)
def _advance(parts):
    """Step ``parts`` to the next weak composition in reverse-lex order."""
    n = parts.shape[0]
    tail = parts[n - 1]
    parts[n - 1] = 0
    for j in range(n - 2, -1, -1):
        if parts[j] > 0:
            parts[j] -= 1
            parts[j + 1] = tail + 1
            return True
    return False


@njit(cache=True)
def compositions_array(k, n):
    count = int(n_compositions(k, n))
    out = np.zeros((count, n), dtype=np.int64)
    parts = np.zeros(n, dtype=np.int64)
    parts[0] = k
    for r in range(count):
        out[r, :] = parts
        _advance(parts)
    return out


@njit(cache=True)
def partial_sum(k_lo, k_hi, lnz, lnz_lo, neg, mus, gamma, logfact, logfact_lo, precise):
    """Signed sum of all composition terms with degree in [k_lo, k_hi].

    Each term is (k; l) prod z_i**l_i / Gamma(gamma + sum mu_i l_i), built as
    exp(log-multinomial + sum l_i ln|z_i| - lnGamma). With ``precise`` the
    log is formed in double-double from the (hi, lo) tables. Returns
    (sum, sum of magnitudes, number of terms, largest log-magnitude); on a
    log-magnitude above LOG_OVERFLOW it stops early with NaN sums.
    """
    n = lnz.shape[0]
    parts = np.zeros(n, dtype=np.int64)
    s = 0.0
    c = 0.0
    sa = 0.0
    ca = 0.0
    count = 0
    max_log = -math.inf
    for k in range(k_lo, k_hi + 1):
        parts[:] = 0
        parts[0] = k
        more = True
        while more:
            odd = 0
            for i in range(n):
                if neg[i]:
                    odd += parts[i]
            if precise:
                lt, t = _precise_term(parts, k, lnz, lnz_lo, mus, gamma, logfact, logfact_lo)
            else:
                lm = logfact[k]
                lz = 0.0
                arg = gamma
                for i in range(n):
                    l = parts[i]
                    lm -= logfact[l]
                    lz += l * lnz[i]
                    arg += mus[i] * l
                lt = lm + lz - lgamma(arg)
                t = math.exp(lt) if lt <= LOG_OVERFLOW else math.inf
            if lt > max_log:
                max_log = lt
            if lt > LOG_OVERFLOW:
                return math.nan, math.nan, count + 1, max_log
            u = sa + t
            if abs(sa) >= t:
                ca += (sa - u) + t
            else:
                ca += (t - u) + sa
            sa = u
            if odd % 2 == 1:
                t = -t
            u = s + t
            if abs(s) >= abs(t):
                c += (s - u) + t
            else:
                c += (t - u) + s
            s = u
            count += 1
            more = _advance(parts)
    return s + c, sa + ca, count, max_log


@njit(cache=True)
def _precise_term(parts, k, lnz, lnz_lo, mus, gamma, logfact, logfact_lo):
    """(approximate log-magnitude, magnitude) of one term in double-double."""
    mh, ml = logfact[k], logfact_lo[k]
    zh, zl = 0.0, 0.0
    ah, al = gamma, 0.0
    for i in range(parts.shape[0]):
        l = parts[i]
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
    if lh > LOG_OVERFLOW:
        return lh, math.inf
    return lh, dd_exp_to_double(lh, ll)
