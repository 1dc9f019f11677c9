"""Closed forms, series, resummation and the one-step kernel."""

import math

import numpy as np
import pytest
from scipy import integrate
from scipy import special

from defectprop import propagator as prop
from defectprop.defect_geometry import DefectParams
from defectprop.spectrum import Couplings
from defectprop.utils import derivative
from defectprop.utils.exceptions import DomainError
from defectprop.utils.exceptions import FallToCenter
from defectprop.utils.exceptions import OnAxis
from defectprop.utils.exceptions import TailTooLarge

FLAT = DefectParams()
OSCILLATOR = Couplings()
CONE = DefectParams.from_sigma(0.8)
COUPLED = Couplings(alpha=0.3, kappa=0.5)


def query(tau=0.5, k=0.0, r1=0.8, theta1=0.0, r2=1.3, theta2=0.5):
    return prop.PropagatorQuery(r1=r1, theta1=theta1, r2=r2, theta2=theta2, tau=tau, k=k)


def test_query_validation():
    q = query(tau=0.7)
    assert isinstance(q.tau, prop.EuclideanTime)
    assert q.tau_e == 0.7
    assert q.dtheta == 0.5
    with pytest.raises(OnAxis):
        query(r1=0.0)
    with pytest.raises(DomainError):
        query(r2=-1.0)
    with pytest.raises(DomainError):
        query(theta2=2 * math.pi)
    with pytest.raises(DomainError):
        query(tau=0.0)


def test_truncation_policy_validation():
    with pytest.raises(DomainError):
        prop.TruncationPolicy(m_max=0)
    with pytest.raises(DomainError):
        prop.TruncationPolicy(quad_rel_tol=0.0)


def test_upsilon():
    assert prop.upsilon(1.3, 0.4, 2.1, 0.6) == prop.upsilon(1.3, 2.1, 0.4, 0.6)
    # I_1/2(x) = sqrt(2 / pi x) sinh x
    x = 2.0 / math.sinh(1.0)
    expected = math.exp(-2.0 / math.tanh(1.0)) * math.sqrt(2 / (math.pi * x)) * math.sinh(x)
    expected /= math.sinh(1.0)
    assert prop.upsilon(0.5, 1.0, 1.0, 1.0) == pytest.approx(expected, rel=1e-12)
    with pytest.raises(DomainError):
        prop.upsilon(0.5, 0.0, 1.0, 1.0)


@pytest.mark.parametrize("phi", [0.2, 0.7, 2.0])
@pytest.mark.parametrize(
    "defect, couplings",
    [
        (DefectParams.from_sigma(0.5), OSCILLATOR),
        (CONE, COUPLED),
        (DefectParams.from_sigma(1.5), Couplings(alpha=0.25)),
    ],
)
def test_hille_hardy(defect, couplings, phi):
    q = query(tau=phi)
    closed = prop.radial_propagator_closed(1, q, defect, couplings)
    series = prop.radial_propagator_series(1, q, defect, couplings, 60)
    assert series.n_terms == 61
    assert closed == pytest.approx(series.value, rel=1e-8)
    assert closed > 0


@pytest.mark.parametrize("omega_tau", np.linspace(0.2, 2.0, 7))
@pytest.mark.parametrize(
    "defect, couplings",
    [
        (FLAT, OSCILLATOR),
        (CONE, Couplings(alpha=0.3, kappa=0.5, omega_L=0.4)),
        (DefectParams.from_sigma(1.5), Couplings(alpha=0.25, omega_0=2.0)),
    ],
)
def test_hille_hardy_across_omega_tau(defect, couplings, omega_tau):
    omega = couplings.bound_omega(defect.sigma)
    q = query(tau=omega_tau / omega)
    for m in (0, 2):
        closed = prop.radial_propagator_closed(m, q, defect, couplings)
        series = prop.radial_propagator_series(m, q, defect, couplings, 80)
        assert closed == pytest.approx(series.value, rel=1e-8)


def test_radial_propagator_large_order_short_time():
    # mu = 29.99, Bessel argument 800
    defect = DefectParams.from_sigma(0.5)
    q = query(tau=0.005, r1=2.0, r2=2.0)
    value = prop.radial_propagator_closed(15, q, defect, OSCILLATOR)
    mu = math.sqrt(4 * 15**2 - 0.75)
    phi = 0.005
    x = 4.0 / math.sinh(phi)
    expected = math.exp(-4.0 / math.tanh(phi) + x) * special.ive(mu, x) / math.sinh(phi)
    assert value == pytest.approx(expected, rel=1e-10)


def test_series_single_term_dominance():
    q = query(tau=10.0)
    closed = prop.radial_propagator_closed(1, q, CONE, COUPLED)
    series = prop.radial_propagator_series(1, q, CONE, COUPLED, 0, rel_tol=1e-6)
    assert series.value == pytest.approx(closed, rel=1e-6)


def test_series_tail_too_large():
    with pytest.raises(TailTooLarge) as info:
        prop.radial_propagator_series(1, query(tau=0.2), CONE, COUPLED, 2)
    assert info.value.estimate > 1e-9


def test_series_partial_sums_positive_at_coincident_points():
    q = query(tau=0.3, r1=1.1, r2=1.1)
    for n_max in (0, 1, 2, 5, 10):
        assert prop.radial_propagator_series(
            0, q, CONE, COUPLED, n_max, rel_tol=math.inf
        ).value > 0


def test_free_limit():
    weak = Couplings(omega_0=1e-6)
    q = query(tau=0.6)
    closed = prop.radial_propagator_closed(2, q, FLAT, weak)
    free = prop.free_radial_kernel(2.0, q.r1, q.r2, q.tau_e, weak)
    assert closed == pytest.approx(free, rel=1e-8)


def test_free_z_kernel_normalised():
    total, _err = integrate.quad(
        lambda z: prop.free_z_kernel(0.3, z, 0.8, OSCILLATOR), -np.inf, np.inf, epsabs=0, epsrel=1e-12
    )
    assert total == pytest.approx(1.0, rel=1e-10)


def test_partial_waves_reproduce_mehler_kernel():
    # sigma = 1, no flux: the plane oscillator in closed form
    q = query(tau=0.4)
    s, c = math.sinh(0.4), math.cosh(0.4)
    exponent = -((q.r1**2 + q.r2**2) * c - 2 * q.r1 * q.r2 * math.cos(q.dtheta)) / (2 * s)
    mehler = math.exp(exponent) / (2 * math.pi * s)
    value = prop.transverse_propagator(q, FLAT, OSCILLATOR)
    assert value.real == pytest.approx(mehler, rel=1e-10)
    assert value.imag == pytest.approx(0.0, abs=1e-14)


def test_transverse_propagator_errors():
    with pytest.raises(TailTooLarge):
        prop.transverse_propagator(query(), CONE, COUPLED, prop.TruncationPolicy(m_max=1))
    with pytest.raises(FallToCenter):
        prop.transverse_propagator(query(), DefectParams.from_sigma(0.5), OSCILLATOR)


def _winding_medium():
    # beta = 1/2, k = 0.4: xi = 0.3
    return DefectParams.from_sigma(0.8, b=math.pi), Couplings(alpha=0.5, kappa=2.0), 0.4


def test_winding_resummation():
    defect, couplings, k = _winding_medium()
    q = query(k=k)
    partial_waves = prop.transverse_propagator(q, defect, couplings)
    natural = prop.winding_sum(q, defect, couplings)
    shifted = prop.winding_sum(q, defect, couplings, alpha_prime=defect.beta * k - 0.5)
    assert abs(natural / partial_waves - 1) < 1e-6
    assert abs(shifted / natural - 1) < 1e-8


def test_winding_decay():
    q = query()
    magnitudes = [
        abs(prop.winding_subpropagator(n, q, CONE, COUPLED, -COUPLED.alpha))
        for n in range(2, 11)
    ]
    assert all(a > b for a, b in zip(magnitudes, magnitudes[1:]))


def test_winding_coefficient():
    c = prop.winding_coefficient(1, 0.25)
    assert c.value == pytest.approx(1j, abs=1e-15)
    a, b = prop.winding_coefficient(2, 0.3).value, prop.winding_coefficient(3, 0.3).value
    assert a * b == pytest.approx(prop.winding_coefficient(5, 0.3).value, abs=1e-14)


def test_winding_window_too_narrow():
    with pytest.raises(TailTooLarge):
        prop.winding_subpropagator(
            0, query(), CONE, COUPLED, -0.3, prop.TruncationPolicy(lambda_cutoff=0.5)
        )


def test_ground_state_is_gaussian():
    r = np.linspace(0.0, 3.0, 7)
    psi = prop.wavefunction(0, 0, r, 0.0, FLAT, OSCILLATOR)
    np.testing.assert_allclose(psi, np.exp(-0.5 * r * r) / math.sqrt(math.pi), rtol=1e-14)


def test_wavefunction_vanishes_on_axis():
    defect = DefectParams.from_sigma(0.5)
    couplings = Couplings(kappa=1.0)
    r = np.logspace(-4, -2, 9)
    psi = np.abs(prop.wavefunction(0, 0, r, 0.0, defect, couplings))
    # mu(0) = 1/2
    assert derivative.loglog_slope(r, psi) == pytest.approx(0.5, abs=1e-3)
    assert prop.wavefunction(0, 0, 0.0, 0.0, defect, couplings) == 0
    # the Schroedinger solution on the same cone does not vanish there
    assert abs(prop.schrodinger_cone_wavefunction(0, 0, 0.0, 0.0, 0.5, couplings)) > 0


def test_schrodinger_cone_wavefunction_normalised():
    sigma, couplings = 0.5, OSCILLATOR

    def density(r):
        return abs(prop.schrodinger_cone_wavefunction(1, 1, r, 0.2, sigma, couplings)) ** 2 * r

    total, _err = integrate.quad(density, 0, np.inf, epsabs=0, epsrel=1e-10)
    assert 2 * math.pi * sigma * total == pytest.approx(1.0, rel=1e-8)


def test_z_sector_factorises_without_dislocation():
    q = query(tau=0.5)
    value = prop.z_sector_propagator(0.1, 0.6, q, CONE, COUPLED)
    expected = prop.free_z_kernel(0.1, 0.6, 0.5, COUPLED) * prop.transverse_propagator(
        q, CONE, COUPLED
    )
    assert abs(value / expected - 1) < 1e-8


def test_z_sector_symmetric_case_is_real():
    defect = DefectParams.from_sigma(0.8, b=1.0)
    couplings = Couplings(kappa=0.5)
    q = query(r1=1.0, theta1=0.3, r2=1.0, theta2=0.3)
    value = prop.z_sector_propagator(0.2, 0.2, q, defect, couplings)
    wider = prop.z_sector_propagator(0.2, 0.2, q, defect, couplings, window=16.0)
    assert abs(value.imag) < 1e-12 * abs(value)
    assert abs(wider / value - 1) < 1e-8


def test_short_time_kernel_real_and_complex():
    assert isinstance(prop.short_time_kernel(1.0, 1.1, 0.2, 0.05, CONE, OSCILLATOR), float)
    assert isinstance(prop.short_time_kernel(1.0, 1.1, 0.2, 0.05, CONE, COUPLED), complex)
    with pytest.raises(DomainError):
        prop.short_time_kernel(1.0, 1.1, 0.2, 0.05, CONE, OSCILLATOR, convention="area3")
    with pytest.raises(OnAxis):
        prop.short_time_kernel(0.0, 1.1, 0.2, 0.05, CONE, OSCILLATOR)


def test_short_time_radial_kernel_is_angular_projection():
    n = 256
    dtheta = np.arange(n) * (2 * math.pi / n)
    for m in (-2, 0, 1):
        samples = [
            prop.short_time_kernel(1.0, 1.1, d, 0.05, CONE, COUPLED) * np.exp(-1j * m * d)
            for d in dtheta
        ]
        projection = complex(np.sum(samples)) * (2 * math.pi / n)
        radial = prop.short_time_radial_kernel(m, 1.0, 1.1, 0.05, CONE, COUPLED)
        assert projection.real == pytest.approx(radial, rel=1e-10)
        assert abs(projection.imag) < 1e-10 * radial


def test_one_step_kernel_matches_closed_form():
    # coincident points: relative error (omega eps)^2 / 6 + O(eps^3)
    policy = prop.TruncationPolicy(m_max=60)
    errors = []
    for eps in (0.2, 0.1, 0.05):
        q = query(tau=eps, r1=1.0, r2=1.0, theta2=0.0)
        exact = prop.transverse_propagator(q, FLAT, OSCILLATOR, policy).real
        one_step = prop.short_time_kernel(1.0, 1.0, 0.0, eps, FLAT, OSCILLATOR)
        errors.append(abs(one_step / exact - 1))
    assert errors[0] == pytest.approx(0.2**2 / 6, rel=0.1)
    for coarse, fine in zip(errors, errors[1:]):
        assert math.log2(coarse / fine) == pytest.approx(2.0, abs=0.2)


def test_trace_identity():
    tau_e = 1.0 / COUPLED.bound_omega(CONE.sigma)
    quadrature = prop.transverse_trace(CONE, COUPLED, 0.0, tau_e)
    spectral = prop.spectral_trace(CONE, COUPLED, 0.0, tau_e)
    assert quadrature > 0
    assert quadrature == pytest.approx(spectral, rel=1e-6)
