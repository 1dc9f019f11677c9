"""
Geometry of the dispiration medium.

A wedge disclination (deficit angle ``gamma``) and a screw dislocation
(Burgers magnitude ``b``) along the z axis, built by an SO(2) x T(1) gauge
transformation of flat space.  This module provides the gauge data
(rotation matrix, translation vector, connections), the solder form and
metric, the delta-supported curvature and torsion coefficients with the
Frank and Burgers vectors, and the embedding of the constant-z, beta = 0
section as a cone in Euclidean 3-space.

Coordinates: ``theta = atan2(y, x)`` mapped to [0, 2 pi).  Matrices are
``numpy`` arrays of shape (3, 3), vectors of shape (3,).

.. autosummary::
    ~DefectParams
    ~AxialDistribution
    ~rotation_matrix
    ~translation_vector
    ~rotational_connection
    ~translational_connection
    ~solder_form
    ~metric_tensor
    ~metric_from_solder
    ~scalar_curvature_coefficient
    ~gaussian_curvature_coefficient
    ~torsion_coefficient
    ~frank_vector
    ~burgers_vector
    ~cone_embedding
    ~principal_curvatures
    ~gauss_bonnet_check
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .utils.constants import TWO_PI
from .utils.exceptions import DomainError
from .utils.exceptions import OnAxis

logger = logging.getLogger(__name__)

E_Z = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class DefectParams:
    """
    Deficit angle ``gamma`` (radians) and Burgers magnitude ``b`` (length).

    Derived: ``sigma = 1 - gamma / 2 pi`` and ``beta = b / 2 pi``.
    """

    gamma: float = 0.0
    b: float = 0.0

    def __post_init__(self):
        """Validate the deficit angle."""
        if not -TWO_PI < self.gamma < TWO_PI:
            raise DomainError(f"gamma must lie in (-2 pi, 2 pi), got {self.gamma}")

    @classmethod
    def from_sigma(cls, sigma, b=0.0):
        """Build from the cone parameter sigma in (0, 2) instead of gamma."""
        return cls(gamma=TWO_PI * (1.0 - sigma), b=b)

    @property
    def sigma(self):
        """sigma = 1 - gamma / 2 pi."""
        return 1.0 - self.gamma / TWO_PI

    @property
    def beta(self):
        """beta = b / 2 pi."""
        return self.b / TWO_PI

    @property
    def is_saddle(self):
        """True for an inserted wedge (gamma < 0, sigma > 1)."""
        return self.gamma < 0


@dataclass(frozen=True)
class AxialDistribution:
    """A distribution ``coefficient * delta2(x, y)`` supported on the axis."""

    coefficient: float
    support: str = "axis"


def theta_of(x):
    """Polar angle of the point ``x`` in [0, 2 pi)."""
    theta = math.atan2(x[1], x[0])
    return theta + TWO_PI if theta < 0 else theta


def _dtheta_coefficients(x):
    """Coefficients of d theta = (x dy - y dx) / r^2 in the (dx, dy, dz) basis."""
    r2 = x[0] * x[0] + x[1] * x[1]
    if r2 == 0:
        raise OnAxis("d theta is undefined on the defect line")
    return np.array([-x[1] / r2, x[0] / r2, 0.0])


def rotation_generator():
    """The antisymmetric matrix m with rho d(rho^-1) = (gamma / 2 pi) m d theta."""
    return np.array([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])


def rotation_matrix(defect, theta):
    """SO(2) rotation by gamma * theta / 2 pi about the z axis."""
    angle = defect.gamma * theta / TWO_PI
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def translation_vector(defect, theta):
    """z translation -b theta / 2 pi."""
    return np.array([0.0, 0.0, -defect.b * theta / TWO_PI])


def rotational_connection(defect, x):
    """
    Gamma^(R) = (gamma / 2 pi) m d theta.

    Returns an array ``G`` of shape (3, 3, 3) with ``G[k]`` the matrix
    coefficient of ``dx^k``.
    """
    dtheta = _dtheta_coefficients(x)
    generator = defect.gamma / TWO_PI * rotation_generator()
    return np.einsum("k,ij->kij", dtheta, generator)


def translational_connection(defect, x):
    """
    Gamma^(T) = -d tau = beta e_z d theta.

    Returns a (3, 3) array with entry ``[alpha, k]`` the coefficient of
    ``e_alpha dx^k``.
    """
    return np.outer(E_Z, defect.beta * _dtheta_coefficients(x))


def solder_form(defect, x):
    """
    Coframe omega = dx + Gamma^(R) . x + Gamma^(T) in the (dx, dy, dz) basis.

    Row ``alpha`` holds the components of omega^alpha.

    Raises:
        OnAxis: x^2 + y^2 = 0
    """
    x = np.asarray(x, dtype=float)
    rotational = rotational_connection(defect, x)
    # (Gamma^(R) . x)^alpha_k = sum_beta G[k, alpha, beta] x^beta
    return np.eye(3) + np.einsum("kab,b->ak", rotational, x) + translational_connection(
        defect, x
    )


def polar_jacobian(r, theta):
    """d(x, y, z) / d(r, theta, z) as a (3, 3) array."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -r * s, 0.0], [s, r * c, 0.0], [0.0, 0.0, 1.0]])


def metric_tensor(defect, r):
    """
    Metric components in (r, theta, z):

    ds^2 = dr^2 + sigma^2 r^2 d theta^2 + (dz + beta d theta)^2
    """
    if r == 0:
        raise OnAxis("metric requested on the defect line")
    if r < 0:
        raise DomainError(f"radius must be > 0, got {r}")
    sigma, beta = defect.sigma, defect.beta
    return np.array(
        [
            [1.0, 0.0, 0.0],
            [0.0, sigma * sigma * r * r + beta * beta, beta],
            [0.0, beta, 1.0],
        ]
    )


def metric_from_solder(defect, r, theta, z=0.0):
    """omega^T omega pulled back to (r, theta, z); equals :func:`metric_tensor`."""
    x = np.array([r * math.cos(theta), r * math.sin(theta), z])
    coframe = solder_form(defect, x) @ polar_jacobian(r, theta)
    return coframe.T @ coframe


def scalar_curvature_coefficient(defect):
    """Coefficient 2 gamma / sigma of delta2(x, y) in the scalar curvature."""
    return 2.0 * defect.gamma / defect.sigma


def gaussian_curvature_coefficient(defect):
    """Coefficient gamma / sigma of delta2(x, y) in the Gaussian curvature."""
    return defect.gamma / defect.sigma


def scalar_curvature(defect):
    """Scalar curvature as an axis-supported distribution (zero off axis)."""
    return AxialDistribution(scalar_curvature_coefficient(defect))


def torsion_coefficient(defect):
    """z component b of the torsion two-form, times delta2 on the axis."""
    return defect.b


def torsion(defect):
    """Torsion as an axis-supported distribution (zero off axis)."""
    return AxialDistribution(torsion_coefficient(defect))


def frank_vector(defect):
    """Frank vector f = gamma e_z."""
    return defect.gamma * E_Z


def burgers_vector(defect):
    """Burgers vector b = b e_z."""
    return defect.b * E_Z


def _check_cone(sigma, r):
    if not 0 < sigma <= 1:
        raise DomainError(
            f"cone embedding in Euclidean 3-space needs 0 < sigma <= 1, got {sigma}"
        )
    if r == 0:
        raise OnAxis("apex of the cone")
    if r < 0:
        raise DomainError(f"radius must be > 0, got {r}")


def cone_embedding(sigma, r, theta):
    """X = (sigma r cos theta, sigma r sin theta, sqrt(1 - sigma^2) r)."""
    _check_cone(sigma, r)
    return np.array(
        [
            sigma * r * math.cos(theta),
            sigma * r * math.sin(theta),
            math.sqrt(1.0 - sigma * sigma) * r,
        ]
    )


def cone_normal(sigma, theta):
    """Unit normal X_r x X_theta / |X_r x X_theta| of the cone."""
    if not 0 < sigma <= 1:
        raise DomainError(f"cone normal needs 0 < sigma <= 1, got {sigma}")
    axial = math.sqrt(1.0 - sigma * sigma)
    return np.array([-axial * math.cos(theta), -axial * math.sin(theta), sigma])


def first_fundamental_form(sigma, r, theta, h=1e-4):
    """
    Metric g_ab of the embedded cone in (r, theta) by central differences.
    """
    x_r = (cone_embedding(sigma, r + h, theta) - cone_embedding(sigma, r - h, theta)) / (
        2 * h
    )
    x_t = (cone_embedding(sigma, r, theta + h) - cone_embedding(sigma, r, theta - h)) / (
        2 * h
    )
    return np.array([[x_r @ x_r, x_r @ x_t], [x_t @ x_r, x_t @ x_t]])


def second_fundamental_form(sigma, r):
    """Shape operator G = g^-1 II in (r, theta): diag(0, sqrt(1-sigma^2)/(sigma r))."""
    k1, k2 = principal_curvatures(sigma, r)
    return np.diag([k1, k2])


def principal_curvatures(sigma, r):
    """Principal curvatures (0, sqrt(1 - sigma^2) / (sigma r)) of the cone."""
    _check_cone(sigma, r)
    return 0.0, math.sqrt(1.0 - sigma * sigma) / (sigma * r)


def gaussian_curvature(sigma, r):
    """K = k1 k2, zero off the apex."""
    k1, k2 = principal_curvatures(sigma, r)
    return k1 * k2


def mean_curvature(sigma, r):
    """H = (k1 + k2) / 2 = sqrt(1 - sigma^2) / (2 sigma r)."""
    k1, k2 = principal_curvatures(sigma, r)
    return 0.5 * (k1 + k2)


def gauss_bonnet_check(sigma, r, quadrature_n=64):
    """
    Boundary term of Gauss-Bonnet for a frustum of slant height r.

    Integrates k_g = 1 / r along the circle with dl = sigma r d theta using
    the periodic trapezoid rule; the result is 2 pi sigma and
    ``2 pi - result`` is the apex curvature gamma.
    """
    _check_cone(sigma, r)
    if quadrature_n < 1:
        raise DomainError(f"quadrature_n must be >= 1, got {quadrature_n}")
    theta = np.arange(quadrature_n) * (TWO_PI / quadrature_n)
    geodesic_curvature = np.full_like(theta, 1.0 / r)
    line_element = np.full_like(theta, sigma * r)
    result = float(np.sum(geodesic_curvature * line_element) * (TWO_PI / quadrature_n))
    logger.debug("Gauss-Bonnet boundary integral: sigma=%g -> %.17g", sigma, result)
    return result
