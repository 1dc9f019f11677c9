"""Special functions against scipy.special."""

import math

import numpy as np
import pytest
from scipy import special

from defectprop.special_functions import AccuracyPolicy
from defectprop.special_functions import bessel_i
from defectprop.special_functions import bessel_i_scaled
from defectprop.special_functions import confluent_hypergeometric_polynomial
from defectprop.special_functions import edwards_gulyaev_asymptotic
from defectprop.special_functions import hankel_asymptotic_series
from defectprop.special_functions import laguerre
from defectprop.special_functions import log_bessel_i
from defectprop.special_functions import log_gamma
from defectprop.special_functions import uniform_asymptotic_log
from defectprop.utils.exceptions import DomainError
from defectprop.utils.exceptions import NonConvergence


@pytest.mark.parametrize(
    "nu, x",
    [
        (0.0, 0.1),
        (0.5, 1.0),
        (1.8, 5.0),
        (3.3, 30.0),
        (2.0, 45.0),
        (0.3, 200.0),
        (12.0, 150.0),
    ],
)
def test_bessel_i_scaled(nu, x):
    assert bessel_i_scaled(nu, x) == pytest.approx(special.ive(nu, x), rel=1e-11)


@pytest.mark.parametrize("nu, x", [(0.0, 0.1), (1.8027756377319946, 2.5), (4.0, 12.0)])
def test_bessel_i(nu, x):
    assert bessel_i(nu, x) == pytest.approx(special.iv(nu, x), rel=1e-11)


def test_log_bessel_i_beyond_float_range():
    expected = 800.0 + math.log(special.ive(2.0, 800.0))
    assert log_bessel_i(2.0, 800.0) == pytest.approx(expected, rel=1e-13)
    assert bessel_i(2.0, 1000.0) == math.inf


@pytest.mark.parametrize(
    "nu, x",
    [
        (15.0, 220.0),
        (20.0, 300.0),
        (28.5, 800.0),
        (29.987, 800.0),
        (45.0, 1500.0),
        (50.0, 2400.0),
        (60.0, 200.0),
        (60.0, 2500.0),
    ],
)
def test_bessel_i_scaled_large_order(nu, x):
    # large x below nu**2, where the ascending series would need thousands of terms
    assert bessel_i_scaled(nu, x) == pytest.approx(special.ive(nu, x), rel=1e-11)
    expected = x + math.log(special.ive(nu, x))
    assert log_bessel_i(nu, x) == pytest.approx(expected, rel=1e-13)


def test_uniform_expansion_at_moderate_argument():
    # still accurate inside the series region, so the switch at x = 200 is smooth
    for nu, x in [(20.0, 150.0), (40.0, 100.0)]:
        expected = x + math.log(special.ive(nu, x))
        assert uniform_asymptotic_log(nu, x) == pytest.approx(expected, rel=1e-12)
    with pytest.raises(DomainError):
        uniform_asymptotic_log(0.0, 300.0)


@pytest.mark.parametrize("nu", [1.0, 2.5, 7.3, 20.0])
@pytest.mark.parametrize("x", [0.1, 1.0, 12.0, 40.0])
def test_bessel_recurrence(nu, x):
    # I_(nu-1) - I_(nu+1) = (2 nu / x) I_nu
    lower = bessel_i_scaled(nu - 1, x)
    upper = bessel_i_scaled(nu + 1, x)
    assert lower - upper == pytest.approx(2 * nu / x * bessel_i_scaled(nu, x), rel=1e-9)


def test_bessel_i_at_zero():
    assert bessel_i(0.0, 0.0) == 1.0
    assert bessel_i(1.5, 0.0) == 0.0
    assert bessel_i_scaled(0.0, 0.0) == 1.0
    assert log_bessel_i(0.7, 0.0) == -math.inf


@pytest.mark.parametrize("nu, x", [(-0.5, 1.0), (1.0, -2.0)])
def test_bessel_domain(nu, x):
    with pytest.raises(DomainError):
        bessel_i(nu, x)


def test_series_budget():
    with pytest.raises(NonConvergence):
        bessel_i(0.5, 10.0, AccuracyPolicy(max_terms=2))


def test_accuracy_policy_validation():
    with pytest.raises(DomainError):
        AccuracyPolicy(target_rel_err=0.0)
    with pytest.raises(DomainError):
        AccuracyPolicy(max_terms=0)


def test_hankel_half_order():
    # e^-x I_1/2(x) = (1 - e^-2x) / sqrt(2 pi x); the expansion terminates
    x = 50.0
    expected = (1 - math.exp(-2 * x)) / math.sqrt(2 * math.pi * x)
    assert hankel_asymptotic_series(0.5, x) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("n", [0, 1, 5, 20])
@pytest.mark.parametrize("mu", [0.0, 0.5, 1.8])
def test_laguerre(n, mu):
    x = np.linspace(0.0, 10.0, 7)
    expected = special.eval_genlaguerre(n, mu, x)
    scale = np.max(np.abs(expected))
    np.testing.assert_allclose(laguerre(n, mu, x), expected, rtol=1e-9, atol=1e-12 * scale)


def test_laguerre_scalar():
    assert isinstance(laguerre(3, 0.5, 2.0), float)
    assert laguerre(0, 2.0, 5.0) == 1.0


def test_laguerre_domain():
    with pytest.raises(DomainError):
        laguerre(-1, 0.0, 1.0)
    with pytest.raises(DomainError):
        laguerre(2, -1.0, 1.0)


def test_confluent_hypergeometric():
    assert confluent_hypergeometric_polynomial(2, 1.0, 1.0) == pytest.approx(-0.5, abs=1e-15)
    assert confluent_hypergeometric_polynomial(4, 2.5, 3.0) == pytest.approx(
        special.hyp1f1(-4, 2.5, 3.0), rel=1e-12
    )


def test_confluent_laguerre_identity():
    # F(-n, mu + 1; x) = n! Gamma(mu + 1) / Gamma(n + mu + 1) L_n^(mu)(x)
    n, mu, x = 6, 1.3, 2.7
    factor = math.exp(log_gamma(n + 1) + log_gamma(mu + 1) - log_gamma(n + mu + 1))
    assert confluent_hypergeometric_polynomial(n, mu + 1, x) == pytest.approx(
        factor * laguerre(n, mu, x), rel=1e-11
    )


def test_confluent_domain():
    with pytest.raises(DomainError):
        confluent_hypergeometric_polynomial(1.5, 1.0, 1.0)
    with pytest.raises(DomainError):
        confluent_hypergeometric_polynomial(2, 0.0, 1.0)


def test_edwards_gulyaev_improves_with_z():
    deviations = [
        abs(edwards_gulyaev_asymptotic(2.0, z) / special.iv(2.0, z) - 1) for z in (10.0, 50.0)
    ]
    assert deviations[1] < deviations[0]
    with pytest.raises(DomainError):
        edwards_gulyaev_asymptotic(2.0, 0.0)


def test_log_gamma():
    assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-15)
    with pytest.raises(DomainError):
        log_gamma(0.0)
