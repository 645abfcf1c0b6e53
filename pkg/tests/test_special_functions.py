import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from betabounds.errors import DomainError, ParameterError, ToleranceNotMetError
from betabounds.quadrature import integrate
from betabounds.special_functions import beta, beta_by_quadrature, log_beta, log_gamma

from conftest import exact_beta

mpmath.mp.dps = 40


def test_log_gamma_examples():
    assert log_gamma(1.0) == 0.0
    assert log_gamma(2.0) == 0.0
    assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-15)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
def test_log_gamma_domain(x):
    with pytest.raises(DomainError):
        log_gamma(x)


def test_log_gamma_relative_accuracy_against_mpmath():
    # dense near the roots at 1 and 2, where absolute accuracy is not enough
    xs = [0.5 + i * 0.0137 for i in range(150)]
    xs += [1.0 + d for d in (1e-12, -1e-9, 3e-6, -2e-4)] + [2.0 + d for d in (1e-12, -1e-9, 3e-6)]
    xs += [10 ** (0.06 * i) for i in range(101)]
    for x in xs:
        ref = mpmath.loggamma(x)
        if ref == 0:
            continue
        assert abs((log_gamma(x) - ref) / ref) <= 1e-13, x


@pytest.mark.parametrize("x, y, expected", [
    (1, 1, Fraction(1)),
    (2, 2, Fraction(1, 6)),
    (3, 2, Fraction(1, 12)),
])
def test_beta_examples(x, y, expected):
    assert beta(x, y) == pytest.approx(float(expected), rel=1e-15)


@pytest.mark.parametrize("x, y", [(0.0, 1.0), (1.0, 0.0), (-2.0, 3.0)])
def test_beta_domain(x, y):
    with pytest.raises(DomainError):
        beta(x, y)


def test_beta_large_arguments_against_mpmath():
    pts = [(0.5, 1000.0), (13.25, 997.0), (50.5, 640.0), (7.0, 45.5), (11.0, 10.0), (0.75, 12.5)]
    for x, y in pts:
        ref = mpmath.beta(x, y)
        assert abs((beta(x, y) - ref) / ref) <= 1e-12
    # beyond the double range only the logarithm is meaningful
    for x, y in pts + [(500.5, 640.0), (1000.0, 1000.0)]:
        ref = mpmath.log(mpmath.beta(x, y))
        assert log_beta(x, y) == pytest.approx(float(ref), rel=1e-14, abs=1e-14)


@settings(max_examples=300, deadline=None)
@given(st.floats(0.5, 100.0), st.floats(0.5, 100.0))
def test_beta_symmetry(x, y):
    assert abs(beta(x, y) - beta(y, x)) <= 1e-12 * beta(x, y)


@settings(max_examples=300, deadline=None)
@given(st.floats(0.5, 500.0), st.floats(0.5, 500.0))
def test_beta_recurrence(x, y):
    assert beta(x + 1, y) == pytest.approx(x / (x + y) * beta(x, y), rel=1e-12)


@settings(max_examples=300, deadline=None)
@given(st.floats(1e-3, 10.0), st.floats(1e-3, 10.0))
def test_beta_reduction_identities(p, q):
    full = beta(q + 1, p + 1)
    assert full - beta(q + 2, p + 1) == pytest.approx(beta(q + 1, p + 2), rel=1e-12)
    assert full - beta(q + 1, p + 2) == pytest.approx(beta(q + 2, p + 1), rel=1e-12)


@pytest.mark.parametrize("x, y, expected", [
    (2, 2, 1 / 6),
    (1, 1, 1.0),
    (4, 2, 1 / 20),
])
def test_beta_by_quadrature_examples(x, y, expected):
    res = beta_by_quadrature(x, y, 1e-10)
    assert abs(res.value - expected) <= 1e-10
    assert res.err_estimate <= 1e-10


def test_beta_by_quadrature_scope():
    with pytest.raises(ParameterError):
        beta_by_quadrature(0.5, 2.0)


def test_quadrature_reports_unmet_tolerance():
    # sqrt singularity with a tiny evaluation budget cannot reach 1e-14
    with pytest.raises(ToleranceNotMetError) as info:
        integrate(lambda t: t ** 0.5, 0.0, 1.0, tol=1e-14, max_evaluations=60)
    assert info.value.value == pytest.approx(2 / 3, abs=1e-3)
    assert info.value.err_estimate > 1e-14


def test_integer_betas_match_rationals():
    for x in range(1, 11):
        for y in range(1, 11):
            exact = exact_beta(x, y)
            assert abs(Fraction(beta(x, y)) - exact) <= Fraction(1, 10 ** 13) * exact
