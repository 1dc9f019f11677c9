"""
Bound-state spectrum of a charge in the dispiration field.

The transverse problem separates into angular channels m with the
effective index

    mu(m) = sqrt(4 (m + xi)^2 + sigma^2 - 1 + kappa) / (2 sigma),
    xi = alpha - beta k,

and the transverse energies hbar omega (2n + mu + 1) + m hbar omega_bar.
The special cases (Landau levels, screw dislocation, disclination) and the
Schroedinger equation on a cone are provided for comparison.

.. autosummary::
    ~Couplings
    ~QuantumNumbers
    ~SpectralLine
    ~DiscrepancyReport
    ~xi
    ~mu_index
    ~transverse_energy
    ~total_energy
    ~landau_levels
    ~screw_dislocation_energy
    ~disclination_energy
    ~schrodinger_cone_energy
    ~discrepancy_report
    ~group_levels
    ~spectrum_table
"""

import logging
import math
from dataclasses import dataclass
from dataclasses import field

from .utils.constants import DEFAULT_GROUPING_TOL
from .utils.exceptions import DomainError
from .utils.exceptions import FallToCenter
from .utils.exceptions import OnAxis

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Couplings:
    """
    Field strengths and units.

    ``alpha`` is the flux ratio of the Aharonov-Bohm tube, ``omega_L`` the
    Larmor frequency of the uniform field, ``omega_0`` the trap frequency and
    ``kappa`` the strength of the short-range inverse-square potential.
    The rotating-frame frequencies depend on the cone parameter sigma.
    """

    alpha: float = 0.0
    omega_L: float = 0.0
    omega_0: float = 1.0
    kappa: float = 0.0
    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        """Validate."""
        if not self.kappa >= 0:
            raise DomainError(f"kappa must be >= 0, got {self.kappa}")
        if not self.omega_0 >= 0:
            raise DomainError(f"omega_0 must be >= 0, got {self.omega_0}")
        if not self.hbar > 0:
            raise DomainError(f"hbar must be > 0, got {self.hbar}")
        if not self.mass > 0:
            raise DomainError(f"mass must be > 0, got {self.mass}")

    def omega_bar(self, sigma=1.0):
        """omega_bar = omega_L / sigma^2."""
        return self.omega_L / (sigma * sigma)

    def omega(self, sigma=1.0):
        """omega = sqrt(omega_0^2 + omega_bar^2)."""
        return math.hypot(self.omega_0, self.omega_bar(sigma))

    def V0(self, xi, sigma=1.0):
        """Constant potential -xi hbar omega_bar dropped from the radial problem."""
        return -xi * self.hbar * self.omega_bar(sigma)

    def bound_omega(self, sigma=1.0):
        """omega, after checking that bound states exist."""
        omega = self.omega(sigma)
        if not omega > 0:
            raise DomainError("bound states need omega > 0 (omega_0 or omega_L)")
        return omega


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    """Radial n >= 0, angular m, axial wavenumber k."""

    n: int
    m: int
    k: float = 0.0

    def __post_init__(self):
        """Validate."""
        if self.n < 0:
            raise DomainError(f"radial quantum number must be >= 0, got n={self.n}")


@dataclass(frozen=True)
class SpectralLine:
    """A (possibly degenerate) level and the states that share it."""

    energy: float
    members: tuple = field(default_factory=tuple)
    unbounded_degeneracy: bool = False

    @property
    def degeneracy(self):
        """Number of enumerated states in this level."""
        return len(self.members)


@dataclass(frozen=True)
class DiscrepancyReport:
    """Path-integral and Schroedinger-cone indices of one channel."""

    mu_path_integral: float
    mu_schrodinger: float
    delta: float


def xi(defect, couplings, k):
    """xi = alpha - beta k."""
    return couplings.alpha - defect.beta * k


def mu_index(m, xi, sigma, kappa):
    """
    Bessel index of channel ``m``.

    Raises:
        FallToCenter: 4(m + xi)^2 + sigma^2 - 1 + kappa < 0
    """
    if not sigma > 0:
        raise DomainError(f"sigma must be > 0, got {sigma}")
    shift = sigma * sigma - 1.0 + kappa
    if shift == 0:
        return abs(m + xi) / sigma
    radicand = 4.0 * (m + xi) ** 2 + shift
    if radicand < 0:
        raise FallToCenter(radicand, m=m)
    return math.sqrt(radicand) / (2.0 * sigma)


def channel_index(m, defect, couplings, k):
    """mu(m) for the given medium, couplings and wavenumber."""
    return mu_index(m, xi(defect, couplings, k), defect.sigma, couplings.kappa)


def transverse_energy(qn, defect, couplings):
    """E~_mn = hbar omega (2n + mu(m) + 1) + m hbar omega_bar."""
    sigma = defect.sigma
    omega = couplings.bound_omega(sigma)
    mu = channel_index(qn.m, defect, couplings, qn.k)
    hbar = couplings.hbar
    return hbar * omega * (2 * qn.n + mu + 1) + qn.m * hbar * couplings.omega_bar(sigma)


def axial_energy(k, couplings):
    """Free z motion, hbar^2 k^2 / 2M."""
    return couplings.hbar**2 * k * k / (2 * couplings.mass)


def total_energy(qn, defect, couplings):
    """E_mnk = E~_mn + hbar^2 k^2 / 2M + (beta k - alpha) hbar omega_bar."""
    sigma = defect.sigma
    offset = couplings.V0(xi(defect, couplings, qn.k), sigma)
    return transverse_energy(qn, defect, couplings) + axial_energy(qn.k, couplings) + offset


def landau_levels(nbar, k, couplings):
    """2 hbar omega_L (nbar + 1/2) + hbar^2 k^2 / 2M."""
    if nbar < 0:
        raise DomainError(f"nbar must be >= 0, got {nbar}")
    return 2 * couplings.hbar * couplings.omega_L * (nbar + 0.5) + axial_energy(
        k, couplings
    )


def oscillator_energy(nbar, couplings):
    """hbar omega_0 (nbar + 1), the two-dimensional oscillator without defect."""
    if nbar < 0:
        raise DomainError(f"nbar must be >= 0, got {nbar}")
    return couplings.hbar * couplings.omega_0 * (nbar + 1)


def screw_dislocation_energy(qn, defect, couplings):
    """hbar omega_0 (2n + 1 + |m + alpha - beta k|), for sigma = 1, kappa = 0, omega_L = 0."""
    if defect.sigma != 1 or couplings.kappa != 0 or couplings.omega_L != 0:
        raise DomainError("screw-dislocation spectrum needs sigma=1, kappa=0, omega_L=0")
    shift = abs(qn.m + xi(defect, couplings, qn.k))
    return couplings.hbar * couplings.omega_0 * (2 * qn.n + 1 + shift)


def disclination_energy(qn, defect, couplings):
    """hbar omega_0 (2n + 1 + sqrt(4m^2 + sigma^2 - 1 + kappa) / 2 sigma), for alpha = beta = omega_L = 0."""
    if couplings.alpha != 0 or defect.b != 0 or couplings.omega_L != 0:
        raise DomainError("disclination spectrum needs alpha=0, b=0, omega_L=0")
    mu = mu_index(qn.m, 0.0, defect.sigma, couplings.kappa)
    return couplings.hbar * couplings.omega_0 * (2 * qn.n + 1 + mu)


def schrodinger_cone_energy(n_r, m, k, sigma, couplings):
    """
    Spectrum of the Schroedinger equation on a cone of angle 2 pi sigma.

    hbar omega (2 n_r + 1 + |m| / sigma) + hbar^2 k^2 / 2M.  The index lacks
    the sigma^2 - 1 term of the path-integral result.
    """
    if not sigma > 0:
        raise DomainError(f"sigma must be > 0, got {sigma}")
    if n_r < 0:
        raise DomainError(f"n_r must be >= 0, got {n_r}")
    omega = couplings.bound_omega(sigma)
    return couplings.hbar * omega * (2 * n_r + 1 + abs(m) / sigma) + axial_energy(
        k, couplings
    )


def discrepancy_report(sigma, kappa, m):
    """Compare mu(m) at xi = 0 with the Schroedinger-cone index |m| / sigma."""
    mu_pi = mu_index(m, 0.0, sigma, kappa)
    mu_s = abs(m) / sigma
    return DiscrepancyReport(mu_path_integral=mu_pi, mu_schrodinger=mu_s, delta=mu_s - mu_pi)


def landau_degeneracy_unbounded(defect, couplings, k):
    """
    True when every m <= 0 shares the lowest Landau level.

    Any finite m window then undercounts the degeneracy.
    """
    return (
        couplings.omega_bar(defect.sigma) > 0
        and defect.sigma == 1
        and xi(defect, couplings, k) == 0
        and couplings.omega_0 == 0
    )


def potential(r, defect, couplings):
    """V(r) = kappa hbar^2 / (8 M sigma^2 r^2) + M omega_0^2 r^2 / 2."""
    if r == 0:
        raise OnAxis("potential is singular on the defect line")
    sigma, hbar, mass = defect.sigma, couplings.hbar, couplings.mass
    return couplings.kappa * hbar * hbar / (
        8 * mass * sigma * sigma * r * r
    ) + 0.5 * mass * couplings.omega_0**2 * r * r


def effective_potential(r, defect, couplings, k):
    """U(r) = V(r) + M omega_bar^2 r^2 / 2 - xi hbar omega_bar (rotating frame)."""
    sigma = defect.sigma
    omega_bar = couplings.omega_bar(sigma)
    return (
        potential(r, defect, couplings)
        + 0.5 * couplings.mass * omega_bar * omega_bar * r * r
        + couplings.V0(xi(defect, couplings, k), sigma)
    )


def group_levels(entries, tol=DEFAULT_GROUPING_TOL, unbounded=False):
    """
    Group ``(energy, QuantumNumbers)`` pairs into levels.

    An entry joins the current level when it lies within ``tol`` (relative)
    of the level's lowest energy.  Levels are ascending in energy; members
    are ordered by m, then n.

    Returns:
        list of :class:`SpectralLine`
    """
    if not tol > 0:
        raise DomainError(f"grouping_tol must be > 0, got {tol}")
    ordered = sorted(entries, key=lambda e: (e[0], e[1].m, e[1].n))
    lines = []
    first, members = None, []
    for energy, qn in ordered:
        if first is not None and abs(energy - first) <= tol * max(abs(first), 1e-300):
            members.append(qn)
            continue
        if first is not None:
            lines.append(_line(first, members, unbounded))
        first, members = energy, [qn]
    if first is not None:
        lines.append(_line(first, members, unbounded))
    return lines


def _line(energy, members, unbounded):
    members = tuple(sorted(members, key=lambda q: (q.m, q.n)))
    return SpectralLine(energy=energy, members=members, unbounded_degeneracy=unbounded)


def spectrum_table(defect, couplings, k, n_max, m_range, grouping_tol=DEFAULT_GROUPING_TOL):
    """
    Enumerate E_mnk for 0 <= n <= n_max and m in the closed ``m_range``.

    Raises:
        FallToCenter: for the first offending channel (``m`` attribute set)
    """
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    m_min, m_max = m_range
    if m_min > m_max:
        raise DomainError(f"empty m_range {m_range}")
    entries = []
    for m in range(m_min, m_max + 1):
        for n in range(n_max + 1):
            qn = QuantumNumbers(n=n, m=m, k=k)
            entries.append((total_energy(qn, defect, couplings), qn))
    unbounded = landau_degeneracy_unbounded(defect, couplings, k)
    lines = group_levels(entries, grouping_tol, unbounded)
    logger.debug(
        "spectrum_table: %d states in %d levels (n_max=%d, m in %s)",
        len(entries),
        len(lines),
        n_max,
        m_range,
    )
    return lines
