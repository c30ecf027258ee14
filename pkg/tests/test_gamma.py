import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from multiml import (
    DomainError,
    NumericalOverflowError,
    find_gamma_minimum,
    gamma,
    gamma_minimum,
    log_gamma,
)
from multiml._backend import BACKENDS, get_kernels

# Gamma(1.4616321) to 20 digits, from the 60-digit oracle.
GAMMA_AT_14616321 = 0.88560319441088956674
# Position and value of the minimum, from the digamma root.
X0_TRUE = 1.4616321449683623413
GAMMA_X0_TRUE = 0.88560319441088870028


@pytest.mark.parametrize(
    "x, expected",
    [(1.0, 0.0), (2.0, 0.0), (0.5, 0.5723649429247001), (5.0, 3.1780538303479458)],
)
def test_log_gamma_known_values(x, expected):
    assert log_gamma(x) == pytest.approx(expected, rel=1e-15, abs=1e-16)


@pytest.mark.parametrize("x, expected", [(1.0, 1.0), (4.0, 6.0), (0.5, math.sqrt(math.pi))])
def test_gamma_known_values(x, expected):
    assert gamma(x) == pytest.approx(expected, rel=1e-14)


def test_gamma_near_minimum_matches_oracle():
    assert gamma(1.4616321) == pytest.approx(GAMMA_AT_14616321, rel=1e-14)


@pytest.mark.parametrize("backend", BACKENDS)
def test_log_gamma_relative_error_grid(backend):
    k = get_kernels(backend)
    xs = np.concatenate(
        [np.geomspace(1e-6, 1.0, 400), np.linspace(0.7, 2.3, 400), np.linspace(2.3, 170, 800)]
    )
    ref = np.array([float(oracles.loggamma(x)) for x in xs])
    nz = np.abs(ref) > 0
    scalar = np.array([k.lgamma(float(x)) for x in xs])
    vector = k.lgamma_array(xs)
    assert np.max(np.abs(scalar - ref)[nz] / np.abs(ref[nz])) <= 1e-13
    assert np.max(np.abs(vector - ref)[nz] / np.abs(ref[nz])) <= 1e-13


@settings(max_examples=300, deadline=None)
@given(st.floats(min_value=1e-6, max_value=170.0))
def test_log_gamma_relative_error_random(x):
    ref = oracles.loggamma(x)
    if ref == 0:
        assert log_gamma(x) == 0.0
    else:
        assert oracles.rel_err(log_gamma(x), ref) <= 1e-13


@pytest.mark.parametrize("bad", [0.0, -1.0, math.nan, math.inf, -math.inf, "x"])
def test_domain_errors(bad):
    with pytest.raises(DomainError):
        log_gamma(bad)
    with pytest.raises(DomainError):
        gamma(bad)


def test_gamma_overflow_guard():
    assert math.isfinite(gamma(170.0))
    with pytest.raises(NumericalOverflowError):
        gamma(170.5)


def test_recurrence():
    xs = np.random.default_rng(11).uniform(1e-9, 80.0, 1000)
    for x in xs:
        assert abs(gamma(x + 1) - x * gamma(x)) / gamma(x + 1) <= 1e-12


def test_positivity_and_minimum_property():
    gx0 = gamma_minimum().gamma_x0
    xs = np.random.default_rng(12).uniform(1e-9, 50.0, 1000)
    for x in xs:
        g = gamma(x)
        assert g > 0
        assert g >= gx0 - 1e-12


def test_increasing_right_of_minimum():
    x0 = gamma_minimum().x0
    rng = np.random.default_rng(13)
    for _ in range(500):
        a, b = np.sort(rng.uniform(x0, 100.0, 2))
        assert gamma(a) <= gamma(b) + 1e-12 * gamma(b)


@pytest.mark.parametrize("tol", [1e-7, 1e-10, 1e-13])
def test_find_gamma_minimum_accuracy(tol):
    gm = find_gamma_minimum(tol)
    assert 1.0 < gm.x0 < 2.0
    assert abs(gm.x0 - X0_TRUE) <= max(tol, 5e-14)
    assert gm.gamma_x0 == pytest.approx(GAMMA_X0_TRUE, rel=1e-15)


def test_find_gamma_minimum_reproduces_constant():
    assert abs(find_gamma_minimum(1e-7).x0 - 1.4616321) <= 5e-7


def test_find_gamma_minimum_coarse_tolerance_brackets():
    assert 1.46 < find_gamma_minimum(1e-3).x0 < 1.463


def test_minimum_is_a_minimum():
    gm = gamma_minimum()
    assert gamma(gm.x0 + 1e-4) > gm.gamma_x0
    assert gamma(gm.x0 - 1e-4) > gm.gamma_x0


def test_cached_minimum_matches_digamma_root():
    assert float(mpmath.digamma(gamma_minimum().x0)) == pytest.approx(0.0, abs=1e-13)


@pytest.mark.parametrize("tol", [0.0, -1e-8, 0.5])
def test_find_gamma_minimum_rejects_tolerance(tol):
    with pytest.raises(DomainError):
        find_gamma_minimum(tol)


def test_find_gamma_minimum_evaluation_budget():
    from multiml import ConvergenceError

    with pytest.raises(ConvergenceError):
        find_gamma_minimum(1e-12, max_evaluations=10)
