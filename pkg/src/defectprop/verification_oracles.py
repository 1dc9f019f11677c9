"""
Brute-force numerical oracles for the closed forms.

These recompute the results of :mod:`defectprop.spectrum` and
:mod:`defectprop.propagator` by methods that share none of their
derivation: finite-difference diagonalisation of the radial operator,
adaptive quadrature of convolutions, Gauss-Laguerre Gram matrices and
direct series comparisons.

.. autosummary::
    ~RadialGrid
    ~radial_eigensolve_fd
    ~cone_schrodinger_eigensolve
    ~fd_convergence_order
    ~convolution_quadrature
    ~semigroup_residual
    ~orthonormality_gram
    ~recombination_residual
    ~jacobi_anger_check
    ~edwards_gulyaev_residuals
    ~delta_limit_scan
    ~observed_order
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import integrate
from scipy import linalg
from scipy import special

from .propagator import PropagatorQuery
from .propagator import radial_propagator_closed
from .propagator import short_time_kernel
from .propagator import upsilon
from .propagator import wavefunction
from .special_functions import bessel_i_scaled
from .special_functions import log_bessel_i
from .spectrum import Couplings
from .spectrum import channel_index
from .utils import derivative
from .utils.constants import FD_RICHARDSON_LIMIT
from .utils.constants import GRID_MARGIN_LENGTHS
from .utils.constants import MIN_GRID_POINTS
from .utils.constants import TWO_PI
from .utils.exceptions import DomainError
from .utils.exceptions import GridTooCoarse
from .utils.exceptions import QuadratureFailure

logger = logging.getLogger(__name__)

UNIT_COUPLINGS = Couplings()


@dataclass(frozen=True)
class RadialGrid:
    """Uniform cell-centred grid r_i = (i - 1/2) h, h = r_max / n_points."""

    r_max: float = 12.0
    n_points: int = 4000
    scheme: str = "uniform"

    def __post_init__(self):
        """Validate."""
        if not self.r_max > 0:
            raise DomainError(f"r_max must be > 0, got {self.r_max}")
        if self.n_points < MIN_GRID_POINTS:
            raise GridTooCoarse(
                f"n_points must be >= {MIN_GRID_POINTS}, got {self.n_points}"
            )
        if self.scheme != "uniform":
            raise DomainError(f"unknown grid scheme {self.scheme!r}")

    @property
    def h(self):
        """Cell width."""
        return self.r_max / self.n_points

    def points(self, n_points=None):
        """Cell centres, optionally for a different point count."""
        n = n_points or self.n_points
        h = self.r_max / n
        return (np.arange(1, n + 1) - 0.5) * h

    def check_extent(self, mu, omega, n_target, couplings=UNIT_COUPLINGS):
        """
        Require r_max >= r_turn + 6 oscillator lengths for level ``n_target``.

        Raises:
            GridTooCoarse: the grid ends inside the wavefunction
        """
        length = math.sqrt(couplings.hbar / (couplings.mass * omega))
        r_turn = length * math.sqrt(2 * (2 * n_target + mu + 1))
        needed = r_turn + GRID_MARGIN_LENGTHS * length
        if self.r_max < needed:
            raise GridTooCoarse(
                f"r_max={self.r_max:g} too short: level n={n_target}, mu={mu:g}"
                f" needs r_max >= {needed:.3g}"
            )


def _fd_levels(mu, omega, r_max, n_points, n_eigs, couplings):
    """
    Lowest eigenvalues of the radial operator on one grid.

    With psi = r^mu phi the centrifugal term cancels and phi, smooth at
    the axis, solves -(hbar^2/2M) r^-p (r^p phi')' + M omega^2 r^2 / 2 with
    p = 2 mu + 1.  Finite volumes with face weights r^p and exact cell
    weights W_i = integral of r^p over the cell; the axis face carries no
    flux.  Symmetrised by W^1/2, every weight enters as a ratio of face
    radii so that large mu neither overflows nor underflows.
    """
    h = r_max / n_points
    upper = np.arange(1, n_points + 1) * h
    r = upper - 0.5 * h
    p = 2.0 * mu + 1.0
    with np.errstate(divide="ignore"):
        log_q = np.log((upper - h) / upper)  # -inf in the axis cell
    q_p = np.exp(p * log_q)
    q_p1 = np.exp((p + 1) * log_q)
    cell = -np.expm1((p + 1) * log_q)  # W_i (p + 1) / upper_i^(p + 1)
    kinetic = couplings.hbar**2 / (2 * couplings.mass)
    diagonal = (
        kinetic * (p + 1) * (1.0 + q_p) / (h * upper * cell)
        + 0.5 * couplings.mass * omega * omega * r**2
    )
    off_diagonal = (
        -kinetic
        * (p + 1)
        * np.sqrt(q_p1[1:])
        / (h * upper[:-1] * np.sqrt(cell[:-1] * cell[1:]))
    )
    values = linalg.eigh_tridiagonal(
        diagonal,
        off_diagonal,
        eigvals_only=True,
        select="i",
        select_range=(0, n_eigs - 1),
    )
    return np.sort(values)


def radial_eigensolve_fd(mu, omega, grid=None, n_eigs=5, couplings=UNIT_COUPLINGS):
    """
    Lowest ``n_eigs`` levels of the radial oscillator with index ``mu``.

    -(hbar^2/2M)(1/r) d/dr (r d/dr) + (hbar^2/2M) mu^2/r^2 + M omega^2 r^2 / 2,
    discretised on the cell-centred grid after factoring out r^mu.
    Converges as h^2 to hbar omega (2n + mu + 1) for every mu >= 0.

    Raises:
        GridTooCoarse: grid too short, or the Richardson estimate against
            the half-resolution grid exceeds 1e-3 relative
    """
    grid = grid or RadialGrid()
    if not mu >= 0:
        raise DomainError(f"mu must be >= 0, got {mu}")
    if not omega > 0:
        raise DomainError(f"omega must be > 0, got {omega}")
    if n_eigs < 1:
        raise DomainError(f"n_eigs must be >= 1, got {n_eigs}")
    grid.check_extent(mu, omega, n_eigs - 1, couplings)
    fine = _fd_levels(mu, omega, grid.r_max, grid.n_points, n_eigs, couplings)
    coarse = _fd_levels(mu, omega, grid.r_max, grid.n_points // 2, n_eigs, couplings)
    estimate = np.max(np.abs(fine - coarse) / 3.0 / np.abs(fine))
    logger.debug(
        "fd levels mu=%g: N=%d, Richardson estimate %.2e",
        mu,
        grid.n_points,
        estimate,
    )
    if estimate > FD_RICHARDSON_LIMIT:
        raise GridTooCoarse(
            f"finite-difference Richardson estimate {estimate:.2e} > {FD_RICHARDSON_LIMIT:g}"
            f" with N={grid.n_points}"
        )
    return [float(v) for v in fine]


def cone_schrodinger_eigensolve(sigma, m, omega, grid=None, n_eigs=5, couplings=UNIT_COUPLINGS):
    """
    Radial levels of the Schroedinger equation on a cone of angle 2 pi sigma.

    Periodicity 2 pi sigma in phi gives the centrifugal index |m| / sigma.
    """
    if not sigma > 0:
        raise DomainError(f"sigma must be > 0, got {sigma}")
    return radial_eigensolve_fd(abs(m) / sigma, omega, grid, n_eigs, couplings)


def fd_convergence_order(mu, omega, grid=None, level=0, couplings=UNIT_COUPLINGS):
    """
    Observed order of the finite-difference level ``level`` under grid doubling.

    Uses N/4, N/2 and N points of ``grid``.
    """
    grid = grid or RadialGrid()
    values = [
        _fd_levels(mu, omega, grid.r_max, grid.n_points // d, level + 1, couplings)[level]
        for d in (4, 2, 1)
    ]
    return observed_order(values)


def observed_order(values, ratio=2.0):
    """Three-point Richardson order of a sequence refined by ``ratio``."""
    if len(values) != 3:
        raise DomainError(f"need three values, got {len(values)}")
    return derivative.observed_order(*values, ratio=ratio)


def convolution_quadrature(mu, eta_pairs, phi_e, tol=1e-6):
    """
    Worst relative residual of the upsilon convolution identity.

    integral_0^inf upsilon(eta2, eta; phi) upsilon(eta, eta1; phi) d eta
    = upsilon(eta2, eta1; 2 phi) for every (eta2, eta1) in ``eta_pairs``.

    Raises:
        QuadratureFailure: quadrature error estimate above ``tol``
    """
    worst = 0.0
    for eta2, eta1 in eta_pairs:

        def integrand(eta, eta1=eta1, eta2=eta2):
            return upsilon(mu, eta2, eta, phi_e) * upsilon(mu, eta, eta1, phi_e)

        lhs, err = integrate.quad(integrand, 0, np.inf, epsabs=0, epsrel=1e-3 * tol, limit=200)
        if err > tol * abs(lhs):
            raise QuadratureFailure(
                f"upsilon convolution at ({eta2}, {eta1}): error {err:.3e} on {lhs:.3e}"
            )
        rhs = upsilon(mu, eta2, eta1, 2 * phi_e)
        worst = max(worst, abs(lhs / rhs - 1))
    logger.debug("upsilon convolution mu=%g phi=%g: residual %.3e", mu, phi_e, worst)
    return worst


def semigroup_residual(m, r1, r2, tau1, tau2, defect, couplings, k=0.0, rel_tol=1e-10):
    """
    |integral R_m(r2, r; tau1) R_m(r, r1; tau2) r dr / R_m(r2, r1; tau1 + tau2) - 1|.

    Raises:
        QuadratureFailure: quadrature error estimate above ``rel_tol``
    """

    def integrand(r):
        first = PropagatorQuery(r1=r, theta1=0.0, r2=r2, theta2=0.0, tau=tau1, k=k)
        second = PropagatorQuery(r1=r1, theta1=0.0, r2=r, theta2=0.0, tau=tau2, k=k)
        return (
            radial_propagator_closed(m, first, defect, couplings)
            * radial_propagator_closed(m, second, defect, couplings)
            * r
        )

    lhs, err = integrate.quad(integrand, 0, np.inf, epsabs=0, epsrel=rel_tol, limit=200)
    if err > 100 * rel_tol * abs(lhs):
        raise QuadratureFailure(f"semigroup quadrature error {err:.3e} on {lhs:.3e}")
    direct = PropagatorQuery(r1=r1, theta1=0.0, r2=r2, theta2=0.0, tau=tau1 + tau2, k=k)
    rhs = radial_propagator_closed(m, direct, defect, couplings)
    return abs(lhs / rhs - 1)


def orthonormality_gram(m, n_max, defect, couplings, k=0.0):
    """
    Gram matrix <psi_mn, psi_mn'> under r dr d theta, 0 <= n, n' <= n_max.

    Gauss-Laguerre rule of 2 n_max + 40 nodes in t = M omega r^2 / hbar, with
    the weight t^mu e^-t divided out of psi psi*.
    """
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    omega = couplings.bound_omega(defect.sigma)
    mu = channel_index(m, defect, couplings, k)
    a = couplings.mass * omega / couplings.hbar
    nodes, weights = special.roots_genlaguerre(2 * n_max + 40, mu)
    if not np.all(np.isfinite(weights)):
        raise QuadratureFailure(f"Gauss-Laguerre rule failed for mu={mu}")
    r = np.sqrt(nodes / a)
    states = np.array(
        [wavefunction(n, m, r, 0.0, defect, couplings, k) for n in range(n_max + 1)]
    )
    # r dr d theta = (pi / a) dt after the angular integral
    weight_function = np.exp(mu * np.log(nodes) - nodes)
    scaled = states / np.sqrt(weight_function)
    gram = (math.pi / a) * (scaled * weights) @ scaled.conj().T
    return gram


def recombination_residual(a, b, c, nu, z_list):
    """
    Relative residual of I_nu(a z) e^{b z} e^{-c/z} ~ sqrt((a+b)/a) I_mu((a+b) z).

    mu = [((a+b)/a) nu^2 - b/4a + 2(a+b)c]^(1/2).  Evaluated in log-space.

    Raises:
        DomainError: negative radicand of mu
    """
    if not a > 0 or not a + b > 0:
        raise DomainError(f"need a > 0 and a + b > 0, got a={a}, b={b}")
    radicand = (a + b) / a * nu * nu - b / (4 * a) + 2 * (a + b) * c
    if radicand < 0:
        raise DomainError(f"recombined index radicand {radicand} < 0")
    mu = math.sqrt(radicand)
    residuals = []
    for z in z_list:
        lhs = log_bessel_i(nu, a * z) + b * z - c / z
        rhs = 0.5 * math.log((a + b) / a) + log_bessel_i(mu, (a + b) * z)
        residuals.append(abs(math.expm1(lhs - rhs)))
    return residuals


def jacobi_anger_check(z, theta, m_max):
    """
    |e^{z cos theta} - sum_{|m| <= m_max} e^{i m theta} I_m(z)| / e^z.

    The sum is real; both sides are scaled by e^-z.
    """
    if not z >= 0:
        raise DomainError(f"z must be >= 0, got {z}")
    terms = [
        (1.0 if m == 0 else 2.0 * math.cos(m * theta)) * bessel_i_scaled(m, z)
        for m in range(0, m_max + 1)
    ]
    return abs(math.exp(z * (math.cos(theta) - 1)) - math.fsum(terms))


def edwards_gulyaev_residuals(nu, z_list):
    """|EG(nu, z) / I_nu(z) - 1| for each z."""
    residuals = []
    for z in z_list:
        if not z > 0:
            raise DomainError(f"z must be > 0, got {z}")
        log_eg = z - (nu * nu - 0.25) / (2 * z) - 0.5 * math.log(TWO_PI * z)
        residuals.append(abs(math.expm1(log_eg - log_bessel_i(nu, z))))
    return residuals


class DeltaLimitScan(NamedTuple):
    """Integrated short-time kernel against a test function, per epsilon."""

    epsilons: tuple
    values: tuple
    errors: tuple
    order: float


def delta_limit_scan(
    r0,
    theta0,
    test_function,
    epsilons,
    defect,
    couplings,
    k=0.0,
    n_nodes=64,
    width=10.0,
    convention="area1",
):
    """
    Integrate :func:`short_time_kernel` from (r0, theta0) against ``test_function``.

    Tensor Gauss-Legendre rule over +/- ``width`` kernel widths in r and
    theta.  As epsilon -> 0 the integral tends to test_function(r0, theta0)
    with an O(epsilon) error; ``order`` is the three-point Richardson order
    of the first three values (epsilons halving).
    """
    sigma = defect.sigma
    nodes, weights = np.polynomial.legendre.leggauss(n_nodes)
    target = test_function(r0, theta0)
    values = []
    for epsilon in epsilons:
        std_r = math.sqrt(couplings.hbar * epsilon / couplings.mass)
        half_r = width * std_r
        half_t = width * std_r / (sigma * r0)
        if r0 - half_r <= 0 or half_t >= math.pi:
            raise DomainError(f"epsilon={epsilon:g} too large for r0={r0:g}")
        r_nodes = r0 + half_r * nodes
        t_nodes = half_t * nodes
        measure = 1.0 if convention == "area1" else sigma
        total = 0j
        for r, wr in zip(r_nodes, weights):
            for dt, wt in zip(t_nodes, weights):
                kernel = short_time_kernel(
                    r0, r, dt, epsilon, defect, couplings, k=k, convention=convention
                )
                total += wr * wt * kernel * test_function(r, theta0 + dt) * measure * r
        values.append(total * half_r * half_t)
    values = [v.real if v.imag == 0 else v for v in values]
    errors = tuple(abs(v - target) for v in values)
    order = observed_order(values[:3]) if len(values) >= 3 else math.nan
    logger.debug("delta-limit scan: errors %s, order %.3f", errors, order)
    return DeltaLimitScan(tuple(epsilons), tuple(values), errors, order)
