"""
Propagators of the dispiration problem in Euclidean time.

Every formula written with a real time tau is evaluated at tau = -i tau_E:
sin and cot become sinh and coth, the Bessel arguments become real and
positive, and the kernels become positive and decaying.  Real-time values
are the analytic continuation of these and are not computed here.

Kernels are assembled in log-space from ``exp(-x) I_mu(x)``; the remaining
exponent ``-(eta1 + eta2) coth + x`` is never positive, so nothing overflows
at small tau_E.

.. autosummary::
    ~EuclideanTime
    ~PropagatorQuery
    ~TruncationPolicy
    ~WindingCoefficient
    ~upsilon
    ~radial_propagator_closed
    ~radial_propagator_series
    ~free_radial_kernel
    ~free_z_kernel
    ~transverse_propagator
    ~winding_coefficient
    ~winding_subpropagator
    ~winding_sum
    ~wavefunction
    ~schrodinger_cone_wavefunction
    ~z_sector_propagator
    ~short_time_kernel
    ~short_time_radial_kernel
    ~transverse_trace
    ~spectral_trace
"""

import cmath
import logging
import math
from dataclasses import dataclass
from dataclasses import replace
from typing import NamedTuple

import numpy as np
from scipy import integrate

from .special_functions import bessel_i_scaled
from .special_functions import confluent_hypergeometric_polynomial
from .special_functions import laguerre
from .special_functions import log_gamma
from .spectrum import QuantumNumbers
from .spectrum import channel_index
from .spectrum import transverse_energy
from .spectrum import xi
from .utils.constants import DEFAULT_LAMBDA_CUTOFF
from .utils.constants import DEFAULT_M_MAX
from .utils.constants import DEFAULT_N_SERIES_MAX
from .utils.constants import DEFAULT_N_WIND_MAX
from .utils.constants import DEFAULT_QUAD_REL_TOL
from .utils.constants import TWO_PI
from .utils.exceptions import DomainError
from .utils.exceptions import FallToCenter
from .utils.exceptions import OnAxis
from .utils.exceptions import QuadratureFailure
from .utils.exceptions import TailTooLarge

logger = logging.getLogger(__name__)

AREA_CONVENTIONS = ("area1", "area2")


@dataclass(frozen=True)
class EuclideanTime:
    """Imaginary time tau_E > 0, with tau = -i tau_E."""

    tau_e: float

    def __post_init__(self):
        """Validate."""
        if not self.tau_e > 0:
            raise DomainError(f"Euclidean time must be > 0, got {self.tau_e}")


@dataclass(frozen=True)
class PropagatorQuery:
    """
    Endpoints (r1, theta1) -> (r2, theta2), Euclidean time and wavenumber k.

    ``tau`` may be given as a float; it is stored as :class:`EuclideanTime`.
    """

    r1: float
    theta1: float
    r2: float
    theta2: float
    tau: EuclideanTime
    k: float = 0.0

    def __post_init__(self):
        """Validate the endpoints."""
        if not isinstance(self.tau, EuclideanTime):
            object.__setattr__(self, "tau", EuclideanTime(float(self.tau)))
        for name in ("r1", "r2"):
            value = getattr(self, name)
            if value == 0:
                raise OnAxis(f"{name} lies on the defect line")
            if not value > 0:
                raise DomainError(f"{name} must be > 0, got {value}")
        for name in ("theta1", "theta2"):
            value = getattr(self, name)
            if not 0 <= value < TWO_PI:
                raise DomainError(f"{name} must lie in [0, 2 pi), got {value}")

    @property
    def tau_e(self):
        """Euclidean time as a float."""
        return self.tau.tau_e

    @property
    def dtheta(self):
        """theta2 - theta1."""
        return self.theta2 - self.theta1


@dataclass(frozen=True)
class TruncationPolicy:
    """Cutoffs of the partial-wave, winding and Hille-Hardy sums."""

    m_max: int = DEFAULT_M_MAX
    n_wind_max: int = DEFAULT_N_WIND_MAX
    n_series_max: int = DEFAULT_N_SERIES_MAX
    quad_rel_tol: float = DEFAULT_QUAD_REL_TOL
    lambda_cutoff: float = DEFAULT_LAMBDA_CUTOFF

    def __post_init__(self):
        """Validate."""
        for name in ("m_max", "n_wind_max", "n_series_max"):
            if getattr(self, name) < 1:
                raise DomainError(f"{name} must be >= 1, got {getattr(self, name)}")
        for name in ("quad_rel_tol", "lambda_cutoff"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be > 0, got {getattr(self, name)}")


DEFAULT_TRUNCATION = TruncationPolicy()


@dataclass(frozen=True)
class WindingCoefficient:
    """Unit phase C_n = exp(i 2 pi n alpha') of winding class n."""

    n: int
    alpha_prime: float

    @property
    def value(self):
        """The complex coefficient."""
        return cmath.exp(1j * TWO_PI * self.n * self.alpha_prime)


class SeriesSum(NamedTuple):
    """Truncated series and the estimate of what was left out."""

    value: float
    tail: float
    n_terms: int


def _oscillator_scale(couplings, omega):
    """M omega / hbar."""
    return couplings.mass * omega / couplings.hbar


def upsilon(mu, eta1, eta2, phi_e, accuracy=None):
    """
    Euclidean upsilon-function.

    csch(phi) exp[-(eta1 + eta2) coth(phi)] I_mu(2 sqrt(eta1 eta2) csch(phi))
    """
    if not (eta1 > 0 and eta2 > 0 and phi_e > 0):
        raise DomainError(
            f"upsilon needs eta1, eta2, phi_e > 0, got {eta1}, {eta2}, {phi_e}"
        )
    csch = 1.0 / math.sinh(phi_e)
    coth = 1.0 / math.tanh(phi_e)
    x = 2.0 * math.sqrt(eta1 * eta2) * csch
    exponent = -(eta1 + eta2) * coth + x
    return csch * math.exp(exponent) * bessel_i_scaled(mu, x, accuracy)


def _radial_kernel(mu, r1, r2, tau_e, omega, couplings, accuracy=None):
    """R for a given index mu: (M omega / hbar) upsilon(mu, eta2, eta1; omega tau_E)."""
    a = _oscillator_scale(couplings, omega)
    return a * upsilon(mu, 0.5 * a * r2 * r2, 0.5 * a * r1 * r1, omega * tau_e, accuracy)


def radial_propagator_closed(m, query, defect, couplings, accuracy=None):
    """
    Closed-form radial propagator of channel ``m``.

    (M omega / hbar sinh) exp[-(M omega / 2 hbar)(r1^2 + r2^2) coth]
    I_mu(M omega r1 r2 / hbar sinh), with arguments omega tau_E.

    Raises:
        FallToCenter: channel ``m`` has no real index
    """
    omega = couplings.bound_omega(defect.sigma)
    mu = channel_index(m, defect, couplings, query.k)
    return _radial_kernel(mu, query.r1, query.r2, query.tau_e, omega, couplings, accuracy)


def radial_propagator_series(
    m, query, defect, couplings, n_series_max=DEFAULT_N_SERIES_MAX, rel_tol=DEFAULT_QUAD_REL_TOL
):
    """
    Radial propagator from its Laguerre (Hille-Hardy) expansion.

    Terms n = 0 .. n_series_max of
    (2 M omega / hbar) (M omega r1 r2 / hbar)^mu exp(-(x + y) / 2)
    n! exp(-omega tau_E (2n + mu + 1)) / Gamma(n + mu + 1) L_n(x) L_n(y)
    with x, y = M omega r^2 / hbar.  The neglected tail is bounded by the
    geometric factor q = exp(-2 omega tau_E).

    Returns:
        :class:`SeriesSum`

    Raises:
        TailTooLarge: estimated tail above ``rel_tol`` relative to the sum
    """
    if n_series_max < 0:
        raise DomainError(f"n_series_max must be >= 0, got {n_series_max}")
    omega = couplings.bound_omega(defect.sigma)
    mu = channel_index(m, defect, couplings, query.k)
    a = _oscillator_scale(couplings, omega)
    phi = omega * query.tau_e
    x = a * query.r1**2
    y = a * query.r2**2
    log_front = math.log(2 * a) + mu * math.log(a * query.r1 * query.r2) - 0.5 * (x + y)
    terms = []
    for n in range(n_series_max + 1):
        log_weight = (
            log_front
            + log_gamma(n + 1)
            - log_gamma(n + mu + 1)
            - phi * (2 * n + mu + 1)
        )
        terms.append(math.exp(log_weight) * laguerre(n, mu, x) * laguerre(n, mu, y))
    total = math.fsum(terms)
    q = math.exp(-2 * phi)
    last = max(abs(t) for t in terms[-2:])
    tail = last * q / (1 - q)
    logger.debug(
        "Hille-Hardy series m=%d: %d terms, sum=%.17g, tail=%.3e",
        m,
        len(terms),
        total,
        tail,
    )
    if tail > rel_tol * abs(total):
        raise TailTooLarge(
            f"Hille-Hardy tail {tail:.3e} exceeds {rel_tol:g} of the sum"
            f" (n_series_max={n_series_max}, omega tau_E={phi:g})",
            estimate=tail / abs(total) if total else math.inf,
        )
    return SeriesSum(value=total, tail=tail, n_terms=len(terms))


def free_radial_kernel(mu, r1, r2, tau_e, couplings, accuracy=None):
    """omega -> 0 limit: (M / hbar tau_E) exp[-M(r1^2 + r2^2) / 2 hbar tau_E] I_mu(M r1 r2 / hbar tau_E)."""
    if not tau_e > 0:
        raise DomainError(f"Euclidean time must be > 0, got {tau_e}")
    scale = couplings.mass / (couplings.hbar * tau_e)
    x = scale * r1 * r2
    exponent = -0.5 * scale * (r1 - r2) ** 2
    return scale * math.exp(exponent) * bessel_i_scaled(mu, x, accuracy)


def free_z_kernel(z1, z2, tau_e, couplings):
    """(M / 2 pi hbar tau_E)^(1/2) exp[-M (z2 - z1)^2 / 2 hbar tau_E]."""
    if not tau_e > 0:
        raise DomainError(f"Euclidean time must be > 0, got {tau_e}")
    scale = couplings.mass / (couplings.hbar * tau_e)
    return math.sqrt(scale / TWO_PI) * math.exp(-0.5 * scale * (z2 - z1) ** 2)


def _rotating_frame_factor(m, omega_bar, tau_e):
    """exp(-i m omega_bar tau) at tau = -i tau_E."""
    return math.exp(-m * omega_bar * tau_e)


def transverse_propagator(query, defect, couplings, policy=None, accuracy=None):
    """
    Partial-wave sum of the transverse propagator.

    K = (1 / 2 pi) sum_{|m| <= m_max} exp(i m (theta2 - theta1))
    exp(-m omega_bar tau_E) R_m.

    Raises:
        TailTooLarge: the |m| = m_max terms exceed ``quad_rel_tol`` of the sum
    """
    policy = policy or DEFAULT_TRUNCATION
    omega_bar = couplings.omega_bar(defect.sigma)
    dtheta = query.dtheta
    channels = range(-policy.m_max, policy.m_max + 1)
    terms = np.array(
        [
            cmath.exp(1j * m * dtheta)
            * _rotating_frame_factor(m, omega_bar, query.tau_e)
            * radial_propagator_closed(m, query, defect, couplings, accuracy)
            for m in channels
        ]
    )
    total = complex(np.sum(terms)) / TWO_PI
    edge = max(abs(terms[0]), abs(terms[-1])) / TWO_PI
    if edge > policy.quad_rel_tol * abs(total):
        raise TailTooLarge(
            f"partial-wave sum not converged at m_max={policy.m_max}:"
            f" edge term {edge:.3e}, sum {abs(total):.3e}",
            estimate=edge / abs(total) if total else math.inf,
        )
    return total


def winding_coefficient(n, alpha_prime):
    """C_n = exp(i 2 pi n alpha')."""
    return WindingCoefficient(n=n, alpha_prime=alpha_prime)


def _continuous_index(nu, shift, sigma, kappa):
    """mu(nu) of a continuous angular momentum nu."""
    extra = sigma * sigma - 1.0 + kappa
    if extra == 0:
        return abs(nu + shift) / sigma
    radicand = 4.0 * (nu + shift) ** 2 + extra
    if radicand < 0:
        raise FallToCenter(radicand)
    return math.sqrt(radicand) / (2.0 * sigma)


def winding_subpropagator(n, query, defect, couplings, alpha_prime, policy=None, accuracy=None):
    """
    Propagator of the paths with winding number ``n``.

    K~_n = (M omega e^{i alpha' dtheta} / 2 pi hbar sinh) exp[-(M omega / 2 hbar)
    (r1^2 + r2^2) coth] * integral d lambda e^{i lambda (dtheta + 2 pi n)}
    e^{-(alpha' + lambda) omega_bar tau_E} I_{mu(alpha' + lambda)}(x).

    The lambda window is centred where mu is smallest, half-width
    ``lambda_cutoff``.  Paired with :func:`winding_coefficient`.

    Raises:
        TailTooLarge: integrand at the window ends above ``quad_rel_tol`` of its peak
        QuadratureFailure: quadrature error estimate above tolerance
    """
    policy = policy or DEFAULT_TRUNCATION
    sigma, kappa = defect.sigma, couplings.kappa
    omega = couplings.bound_omega(sigma)
    omega_bar = couplings.omega_bar(sigma)
    shift = xi(defect, couplings, query.k)
    tau_e = query.tau_e
    a = _oscillator_scale(couplings, omega)
    phi = omega * tau_e
    x = a * query.r1 * query.r2 / math.sinh(phi)
    log_front = (
        math.log(a / (TWO_PI * math.sinh(phi)))
        - 0.5 * a * (query.r1**2 + query.r2**2) / math.tanh(phi)
        + x
    )

    def weight(lam):
        nu = alpha_prime + lam
        mu = _continuous_index(nu, shift, sigma, kappa)
        return math.exp(-nu * omega_bar * tau_e) * bessel_i_scaled(mu, x, accuracy)

    tol = policy.quad_rel_tol
    center = -alpha_prime - shift
    lo, hi = center - policy.lambda_cutoff, center + policy.lambda_cutoff
    peak = weight(center)
    tail = max(weight(lo), weight(hi))
    if tail > tol * peak:
        raise TailTooLarge(
            f"lambda integrand at +/-{policy.lambda_cutoff:g} is {tail / peak:.3e}"
            " of its peak",
            estimate=tail / peak,
        )

    scale, _err = integrate.quad(
        weight, lo, hi, points=[center], epsabs=0, epsrel=tol, limit=200
    )
    frequency = query.dtheta + TWO_PI * n
    epsabs = 1e-3 * tol * scale
    if frequency == 0:
        real, imag, err = scale, 0.0, _err
    else:
        real, err_re = integrate.quad(
            weight, lo, hi, weight="cos", wvar=frequency, epsabs=epsabs, epsrel=tol, limit=200
        )
        imag, err_im = integrate.quad(
            weight, lo, hi, weight="sin", wvar=frequency, epsabs=epsabs, epsrel=tol, limit=200
        )
        err = math.hypot(err_re, err_im)
    if err > tol * scale:
        raise QuadratureFailure(
            f"winding n={n}: lambda quadrature error {err:.3e} above {tol * scale:.3e}"
        )
    logger.debug("K~_%d: integral=(%.6e, %.6e), err=%.2e", n, real, imag, err)
    phase = cmath.exp(1j * alpha_prime * query.dtheta)
    return math.exp(log_front) * phase * complex(real, imag)


def winding_sum(query, defect, couplings, alpha_prime=None, policy=None, accuracy=None):
    """
    sum_{|n| <= n_wind_max} C_n K~_n.

    ``alpha_prime`` defaults to -alpha.
    """
    policy = policy or DEFAULT_TRUNCATION
    if alpha_prime is None:
        alpha_prime = -couplings.alpha
    windings = range(-policy.n_wind_max, policy.n_wind_max + 1)
    terms = np.array(
        [
            winding_coefficient(n, alpha_prime).value
            * winding_subpropagator(n, query, defect, couplings, alpha_prime, policy, accuracy)
            for n in windings
        ]
    )
    return complex(np.sum(terms))


def wavefunction(n, m, r, theta, defect, couplings, k=0.0):
    """
    Normalised eigenfunction psi_mn.

    sqrt(M omega / pi hbar) sqrt(n! / Gamma(n + mu + 1)) t^(mu/2) e^(-t/2)
    L_n^(mu)(t) e^(i m theta), t = M omega r^2 / hbar.  ``r`` and ``theta``
    may be arrays.
    """
    if n < 0:
        raise DomainError(f"radial quantum number must be >= 0, got n={n}")
    omega = couplings.bound_omega(defect.sigma)
    mu = channel_index(m, defect, couplings, k)
    a = _oscillator_scale(couplings, omega)
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("radius must be >= 0")
    t = a * r * r
    log_norm = 0.5 * math.log(a / math.pi) + 0.5 * (log_gamma(n + 1) - log_gamma(n + mu + 1))
    with np.errstate(divide="ignore"):
        log_power = np.where(t > 0, 0.5 * mu * np.log(np.where(t > 0, t, 1.0)), 0.0)
    envelope = np.exp(log_norm + log_power - 0.5 * t)
    if mu > 0:
        envelope = np.where(t > 0, envelope, 0.0)
    psi = envelope * laguerre(n, mu, t) * np.exp(1j * m * np.asarray(theta, dtype=float))
    return psi if psi.ndim else complex(psi)


def schrodinger_cone_wavefunction(n_r, m, r, phi, sigma, couplings):
    """
    Eigenfunction of the Schroedinger equation on a cone, phi in [0, 2 pi sigma).

    N t^(nu/2) e^(-t/2) F(-n_r, 1 + nu; t) e^(i m phi / sigma), nu = |m| / sigma,
    normalised under r dr d phi.  For m = 0 it does not vanish at r = 0.
    """
    if not sigma > 0:
        raise DomainError(f"sigma must be > 0, got {sigma}")
    if n_r < 0:
        raise DomainError(f"n_r must be >= 0, got {n_r}")
    if r < 0:
        raise DomainError(f"radius must be >= 0, got {r}")
    omega = couplings.bound_omega(sigma)
    a = _oscillator_scale(couplings, omega)
    nu = abs(m) / sigma
    t = a * r * r
    log_norm = 0.5 * (
        math.log(a / (math.pi * sigma)) + log_gamma(n_r + nu + 1) - log_gamma(n_r + 1)
    ) - log_gamma(nu + 1)
    if t == 0:
        radial = math.exp(log_norm) if nu == 0 else 0.0
    else:
        radial = math.exp(log_norm + 0.5 * nu * math.log(t) - 0.5 * t)
        radial *= confluent_hypergeometric_polynomial(n_r, 1 + nu, t)
    return radial * cmath.exp(1j * m * phi / sigma)


def z_sector_propagator(z1, z2, query, defect, couplings, policy=None, window=8.0):
    """
    Full propagator including the z motion, at fixed transverse endpoints.

    (1 / 2 pi) integral dk e^{i k (z2 - z1)} e^{-tau_E hbar k^2 / 2M} K^(k),
    where K^(k) is :func:`transverse_propagator` at wavenumber k
    (``query.k`` is ignored).  The k window is +/- ``window`` standard
    deviations of the Gaussian factor.

    Raises:
        TailTooLarge: Gaussian factor at the window edge above tolerance
        QuadratureFailure: quadrature error estimate above tolerance
    """
    policy = policy or DEFAULT_TRUNCATION
    tau_e = query.tau_e
    width = math.sqrt(couplings.mass / (tau_e * couplings.hbar))
    k_edge = window * width
    edge = math.exp(-0.5 * window * window)
    if edge > policy.quad_rel_tol:
        raise TailTooLarge(
            f"k window of {window:g} widths leaves a Gaussian tail {edge:.3e}",
            estimate=edge,
        )
    dz = z2 - z1

    def integrand(k):
        kernel = transverse_propagator(replace(query, k=k), defect, couplings, policy)
        value = cmath.exp(1j * k * dz) * math.exp(-0.5 * (k / width) ** 2) * kernel
        return np.array([value.real, value.imag])

    result, err = integrate.quad_vec(
        integrand, -k_edge, k_edge, epsrel=policy.quad_rel_tol, norm="max"
    )
    value = complex(result[0], result[1]) / TWO_PI
    if err / TWO_PI > 10 * policy.quad_rel_tol * max(abs(value), 1e-300):
        raise QuadratureFailure(f"k quadrature error {err:.3e} for |K|={abs(value):.3e}")
    return value


def _short_time_exponent(r1, r2, epsilon_e, sigma, couplings, shift):
    """Terms of the one-step Euclidean action without the angular part."""
    hbar, mass = couplings.hbar, couplings.mass
    omega = couplings.omega(sigma)
    return (
        -mass * (r1 * r1 + r2 * r2) / (2 * hbar * epsilon_e)
        + (1 - sigma * sigma) * mass * r1 * r2 / (hbar * epsilon_e)
        - (4 * shift * shift + couplings.kappa)
        * hbar
        * epsilon_e
        / (8 * mass * sigma * sigma * r1 * r2)
        - mass * omega * omega * epsilon_e * (r1 * r1 + r2 * r2) / (4 * hbar)
    )


def _short_time_amplitude(epsilon_e, sigma, couplings, convention):
    if convention not in AREA_CONVENTIONS:
        raise DomainError(f"unknown measure convention {convention!r}")
    amplitude = couplings.mass / (TWO_PI * couplings.hbar * epsilon_e)
    return amplitude * sigma if convention == "area1" else amplitude


def short_time_kernel(r1, r2, dtheta, epsilon_e, defect, couplings, k=0.0, convention="area1"):
    """
    One time-slice kernel of the Euclidean path integral.

    A exp[-M(r1^2 + r2^2)/2 hbar eps + (1 - sigma^2) M r1 r2 / hbar eps
    + (M sigma^2 r1 r2 / hbar eps) cos(dtheta + i xi hbar eps / M sigma^2 r1 r2)
    - (4 xi^2 + kappa) hbar eps / 8 M sigma^2 r1 r2 - M omega^2 eps (r1^2 + r2^2) / 4 hbar].

    ``convention="area1"`` pairs A = M sigma / 2 pi hbar eps with the measure
    r dr d theta; ``"area2"`` pairs A = M / 2 pi hbar eps with sigma r dr d theta.
    Complex when xi != 0.
    """
    if not epsilon_e > 0:
        raise DomainError(f"epsilon_e must be > 0, got {epsilon_e}")
    if not (r1 > 0 and r2 > 0):
        raise OnAxis("short-time kernel needs r1, r2 > 0")
    sigma = defect.sigma
    shift = xi(defect, couplings, k)
    hbar, mass = couplings.hbar, couplings.mass
    z = mass * sigma * sigma * r1 * r2 / (hbar * epsilon_e)
    exponent = _short_time_exponent(r1, r2, epsilon_e, sigma, couplings, shift)
    # z (cos(...) - 1) keeps the exponent bounded
    angular = z * (cmath.cos(dtheta + 1j * shift / z) - 1.0)
    amplitude = _short_time_amplitude(epsilon_e, sigma, couplings, convention)
    value = amplitude * cmath.exp(exponent + z + angular)
    return value if shift else value.real


def short_time_radial_kernel(m, r1, r2, epsilon_e, defect, couplings, k=0.0):
    """
    Angular projection of :func:`short_time_kernel` onto channel m (measure r dr).

    2 pi A exp[...] e^{-m delta} I_m(z), delta = xi hbar eps / M sigma^2 r1 r2.
    """
    if not epsilon_e > 0:
        raise DomainError(f"epsilon_e must be > 0, got {epsilon_e}")
    if not (r1 > 0 and r2 > 0):
        raise OnAxis("short-time kernel needs r1, r2 > 0")
    sigma = defect.sigma
    shift = xi(defect, couplings, k)
    z = couplings.mass * sigma * sigma * r1 * r2 / (couplings.hbar * epsilon_e)
    exponent = _short_time_exponent(r1, r2, epsilon_e, sigma, couplings, shift)
    amplitude = _short_time_amplitude(epsilon_e, sigma, couplings, "area1")
    return (
        TWO_PI
        * amplitude
        * math.exp(exponent + z - m * shift / z)
        * bessel_i_scaled(abs(m), z)
    )


def transverse_trace(defect, couplings, k, tau_e, policy=None):
    """
    Integral of K(r, theta; r, theta) over r dr d theta.

    The angular integral gives 2 pi; each channel |m| <= m_max is integrated
    in t = M omega r^2 / hbar by adaptive quadrature.
    """
    policy = policy or DEFAULT_TRUNCATION
    tau = EuclideanTime(tau_e)
    sigma = defect.sigma
    omega = couplings.bound_omega(sigma)
    omega_bar = couplings.omega_bar(sigma)
    phi = omega * tau.tau_e
    sinh = math.sinh(phi)
    damping = math.tanh(0.5 * phi)
    total = []
    for m in range(-policy.m_max, policy.m_max + 1):
        mu = channel_index(m, defect, couplings, k)

        def integrand(t, mu=mu):
            return math.exp(-t * damping) * bessel_i_scaled(mu, t / sinh) / (2 * sinh)

        value, err = integrate.quad(
            integrand, 0, np.inf, epsabs=0, epsrel=0.1 * policy.quad_rel_tol, limit=200
        )
        if err > 10 * policy.quad_rel_tol * abs(value):
            raise QuadratureFailure(f"trace of channel m={m}: error {err:.3e} on {value:.3e}")
        total.append(_rotating_frame_factor(m, omega_bar, tau.tau_e) * value)
    return math.fsum(total)


def spectral_trace(defect, couplings, k, tau_e, policy=None):
    """sum_{|m| <= m_max} sum_{n <= n_series_max} exp(-tau_E E~_mn / hbar)."""
    policy = policy or DEFAULT_TRUNCATION
    tau = EuclideanTime(tau_e)
    terms = [
        math.exp(
            -tau.tau_e
            * transverse_energy(QuantumNumbers(n=n, m=m, k=k), defect, couplings)
            / couplings.hbar
        )
        for m in range(-policy.m_max, policy.m_max + 1)
        for n in range(policy.n_series_max + 1)
    ]
    return math.fsum(terms)
