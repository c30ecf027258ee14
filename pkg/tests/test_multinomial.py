import math

import mpmath
import numpy as np
import pytest

import oracles
from multiml import (
    BudgetExceededError,
    ConvergenceError,
    DomainError,
    MLParams,
    MultiMLParams,
    compositions_array,
    compute_constants,
    eval_classic,
    eval_multinomial,
    multinomial_partial_sum,
    multinomial_tail_bound,
    term_block,
)
from multiml._backend import BACKENDS, get_kernels
from multiml._dd import dd_log
from multiml.multinomial import _logfact, _logfact_dd

# mu=(0.5, 1.0), gamma=1, z=(0.3, -0.2): all compositions to k=60 at 60 digits
# (the absolute tail beyond is below 1e-62).
REF_TWO = 1.1615059242650959470
# Degree-5 block for mu=(0.3, 0.7, 1.1), gamma=0.8, z=(0.2, 0.1, -0.3).
REF_BLOCK5 = -5.9397469352236873417e-05


def random_params(rng, n, lo=0.05, hi=2.0):
    mus = np.sort(rng.uniform(lo, hi, n)) + np.arange(n) * 1e-3
    return MultiMLParams(tuple(mus), float(0.05 + 2.95 * (1 - rng.random())))


@pytest.mark.parametrize("n", [1, 2, 5])
def test_zero_argument(n):
    p = MultiMLParams(tuple(0.3 + 0.2 * i for i in range(n)), 0.7)
    r = eval_multinomial(p, [0.0] * n)
    assert r.value == pytest.approx(1 / math.gamma(0.7), rel=1e-14)
    assert r.truncation_k == 0 and r.tail_bound == 0.0


def test_single_coordinate_reduces_to_classic():
    r = eval_multinomial(MultiMLParams((0.7,), 1.3), [0.9])
    c = eval_classic(MLParams(0.7, 1.3), 0.9)
    assert r.value == pytest.approx(c.value, rel=1e-12)


def test_equal_exponents_collapse():
    r = eval_multinomial(MultiMLParams((0.5, 0.5), 1.0), [0.3, 0.4])
    c = eval_classic(MLParams(0.5, 1.0), 0.7)
    assert r.value == pytest.approx(c.value, rel=1e-11)
    assert not r.certified


def test_reference_value():
    r = eval_multinomial(MultiMLParams((0.5, 1.0), 1.0), [0.3, -0.2], tolerance=1e-12)
    assert r.certified
    assert abs(r.value - REF_TWO) <= r.tail_bound + 4e-16


def test_term_block_examples():
    p = MultiMLParams((0.5, 1.0), 1.0)
    assert term_block(p, [0.3, -0.2], 0) == pytest.approx(1.0, rel=1e-15)
    expected = 0.3 / math.gamma(1.5) - 0.2 / math.gamma(2.0)
    assert term_block(p, [0.3, -0.2], 1) == pytest.approx(expected, rel=1e-14)
    q = MultiMLParams((0.3, 0.7, 1.1), 0.8)
    assert term_block(q, [0.2, 0.1, -0.3], 5) == pytest.approx(REF_BLOCK5, rel=1e-13)


def test_term_block_zero_vector():
    p = MultiMLParams((0.5, 1.0), 2.0)
    assert term_block(p, [0, 0], 0) == pytest.approx(1.0)
    assert term_block(p, [0, 0], 3) == 0.0


def test_tail_bound_examples():
    p = MultiMLParams((0.5, 1.0), 1.0)
    assert multinomial_tail_bound(p, [0, 0], 1) == 0.0
    b = multinomial_tail_bound(p, [0.3, -0.2], 30)
    assert b >= oracles.multinomial_abs_tail((0.5, 1.0), 1.0, (0.3, -0.2), 30, 60)
    q = MultiMLParams((0.8,), 1.1)
    assert multinomial_tail_bound(q, [1.5], 10) >= oracles.classic_abs_tail(0.8, 1.1, 1.5, 10, 200)


def test_tail_bound_requires_ascending():
    with pytest.raises(DomainError):
        multinomial_tail_bound(MultiMLParams((1.0, 0.5), 1.0), [0.1, 0.1], 5)


def test_oracle_equivalence_partial_sums():
    rng = np.random.default_rng(30)
    for _ in range(40):
        n = int(rng.integers(1, 5))
        p = random_params(rng, n)
        z = rng.uniform(-1, 1, n)
        got = multinomial_partial_sum(p, z, 15)
        ref = oracles.multinomial_partial(p.mus, p.gamma_param, z, 15)
        assert oracles.rel_err(got, ref) <= 1e-10


def test_symmetry_under_joint_permutation():
    rng = np.random.default_rng(31)
    for _ in range(25):
        n = int(rng.integers(2, 5))
        p = random_params(rng, n, lo=0.3)
        z = rng.uniform(-1, 1, n)
        base = eval_multinomial(p, z).value
        perm = rng.permutation(n)
        q = MultiMLParams(tuple(p.mus[i] for i in perm), p.gamma_param)
        r = eval_multinomial(q, z[perm])
        assert r.certified
        assert r.value == pytest.approx(base, rel=1e-12)


def test_zero_coordinates_are_skipped():
    p = MultiMLParams((0.4, 0.9, 1.3), 1.2)
    full = eval_multinomial(p, [0.5, 0.0, 0.0])
    single = eval_multinomial(MultiMLParams((0.4,), 1.2), [0.5])
    assert full.value == single.value
    assert full.terms_used == full.truncation_k + 1


def test_argument_bracketing_and_decomposition():
    rng = np.random.default_rng(32)
    for _ in range(50):
        n = int(rng.integers(2, 6))
        p = random_params(rng, n)
        mus = np.array(p.mus)
        k = int(rng.integers(0, 25))
        comps = compositions_array(k, n)
        args = p.gamma_param + comps @ mus
        lo, hi = p.gamma_param + mus[0] * k, p.gamma_param + mus[-1] * k
        assert np.all(args >= lo - 1e-13) and np.all(args <= hi + 1e-13)
        assert np.all(args[comps[:, 0] == k] == pytest.approx(lo))
        j = int(rng.integers(0, n))
        alt = p.gamma_param + mus[j] * k + comps @ (mus - mus[j])
        assert np.max(np.abs(alt - args)) <= 1e-13


def test_block_bound_termwise():
    rng = np.random.default_rng(33)
    for _ in range(40):
        n = int(rng.integers(1, 5))
        p = random_params(rng, n)
        z = rng.uniform(-2, 2, n)
        c = compute_constants(p).c_safe
        r = float(np.abs(z).sum())
        for k in range(0, 20):
            rhs = c * r**k / math.gamma(p.gamma_param + p.mus[0] * k)
            assert abs(term_block(p, z, k)) <= rhs + 1e-12


def test_repeated_exponents_are_uncertified():
    r = eval_multinomial(MultiMLParams((0.6, 0.6, 1.0), 1.0), [0.2, -0.1, 0.3])
    assert not r.certified
    ref = oracles.multinomial_partial((0.6, 0.6, 1.0), 1.0, (0.2, -0.1, 0.3), 40)
    assert oracles.rel_err(r.value, ref) <= 1e-12


def test_precise_and_plain_agree():
    p = MultiMLParams((0.4, 0.9, 1.5), 0.6)
    z = [1.2, -0.8, 0.5]
    a = eval_multinomial(p, z, precise=True).value
    b = eval_multinomial(p, z, precise=False).value
    ref = oracles.multinomial_partial(p.mus, p.gamma_param, z, 80)
    assert oracles.rel_err(a, ref) <= 1e-13
    assert oracles.rel_err(b, ref) <= 1e-11


def test_errors():
    p = MultiMLParams((0.5, 1.0), 1.0)
    with pytest.raises(DomainError):
        eval_multinomial(p, [0.1])
    with pytest.raises(DomainError):
        eval_multinomial(p, [0.1, math.nan])
    with pytest.raises(DomainError):
        eval_multinomial(p, [60.0, -50.0])
    with pytest.raises(DomainError):
        eval_multinomial(p, [0.1, 0.1], tolerance=1e-15)
    with pytest.raises(DomainError):
        eval_multinomial(MultiMLParams(tuple(0.1 * i + 0.1 for i in range(9)), 1.0), [0.0] * 9)
    with pytest.raises(BudgetExceededError):
        eval_multinomial(MultiMLParams((0.5, 0.7, 0.9, 1.1), 1.0), [2.0, 2.0, 2.0, 2.0], budget=1000)
    with pytest.raises(ConvergenceError):
        eval_multinomial(MultiMLParams((0.2, 1.0), 1.0), [5.0, 5.0], k_max=50)
    for mus, g in [((), 1.0), ((0.5, -1.0), 1.0), ((0.5,), 0.0), ((math.nan,), 1.0)]:
        with pytest.raises(DomainError):
            MultiMLParams(mus, g)


def test_params_normalized():
    p = MultiMLParams([1, 2], 3)
    assert p.mus == (1.0, 2.0) and isinstance(p.gamma_param, float)
    assert p.strictly_ascending and p.distinct
    assert not MultiMLParams((2.0, 1.0), 1.0).strictly_ascending


@pytest.mark.parametrize("precise", [False, True])
def test_backends_agree(precise):
    if len(BACKENDS) < 2:
        pytest.skip("numba not available")
    rng = np.random.default_rng(34)
    table = _logfact_dd(30) if precise else _logfact(30)
    for _ in range(20):
        n = int(rng.integers(1, 5))
        z = rng.uniform(-1.5, 1.5, n)
        mus = np.sort(rng.uniform(0.1, 2, n))
        if precise:
            pairs = np.array([dd_log(float(v), 0.0) for v in np.abs(z)])
            lnz, lo = pairs[:, 0].copy(), pairs[:, 1].copy()
        else:
            lnz, lo = np.log(np.abs(z)), np.zeros(n)
        res = [
            get_kernels(b).partial_sum(0, 30, lnz, lo, z < 0, mus, 0.9, table[0], table[1], precise)
            for b in BACKENDS
        ]
        assert res[0][2] == res[1][2]
        # Cancellation scales rounding differences by the sum of magnitudes.
        assert abs(res[0][0] - res[1][0]) <= 1e-13 * res[0][1]
        assert res[0][1] == pytest.approx(res[1][1], rel=1e-12)
