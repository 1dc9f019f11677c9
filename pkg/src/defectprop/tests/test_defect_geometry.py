"""Gauge data, metric, curvature and the cone embedding."""

import math

import numpy as np
import pytest

from defectprop import defect_geometry as geo
from defectprop.utils.exceptions import DomainError
from defectprop.utils.exceptions import OnAxis


def test_derived_parameters():
    defect = geo.DefectParams(gamma=math.pi / 2, b=1.0)
    assert defect.sigma == pytest.approx(0.75, abs=1e-15)
    assert defect.beta == pytest.approx(1 / (2 * math.pi), abs=1e-15)
    assert not defect.is_saddle
    assert geo.DefectParams.from_sigma(0.75).gamma == pytest.approx(math.pi / 2, abs=1e-15)
    assert geo.DefectParams.from_sigma(1.5).is_saddle
    assert geo.DefectParams(b=math.pi).beta == 0.5


@pytest.mark.parametrize("gamma", [2 * math.pi, -2 * math.pi, 7.0])
def test_gamma_range(gamma):
    with pytest.raises(DomainError):
        geo.DefectParams(gamma=gamma)


@pytest.mark.parametrize(
    "x, theta",
    [((1.0, 0.0, 0.0), 0.0), ((0.0, 1.0, 0.0), math.pi / 2), ((0.0, -1.0, 2.0), 1.5 * math.pi)],
)
def test_theta_of(x, theta):
    assert geo.theta_of(x) == pytest.approx(theta, abs=1e-15)


def test_rotation_matrix():
    rho = geo.rotation_matrix(geo.DefectParams(gamma=math.pi / 2), math.pi)
    np.testing.assert_allclose(rho @ rho.T, np.eye(3), atol=1e-15)
    assert np.linalg.det(rho) == pytest.approx(1.0, abs=1e-15)
    assert rho[0, 0] == pytest.approx(math.cos(math.pi / 4), abs=1e-15)


def test_rotational_connection_is_rho_d_rho_inverse():
    defect = geo.DefectParams(gamma=1.1)
    theta, h = 0.9, 1e-5
    inverse = [np.linalg.inv(geo.rotation_matrix(defect, theta + s * h)) for s in (1, -1)]
    derivative = geo.rotation_matrix(defect, theta) @ (inverse[0] - inverse[1]) / (2 * h)
    expected = defect.gamma / (2 * math.pi) * geo.rotation_generator()
    np.testing.assert_allclose(derivative, expected, atol=1e-8)

    # contracted with the angular tangent (-y, x, 0), d theta = 1
    x = np.array([math.cos(theta), math.sin(theta), 0.3])
    tangent = np.array([-x[1], x[0], 0.0])
    along = np.einsum("kij,k->ij", geo.rotational_connection(defect, x), tangent)
    np.testing.assert_allclose(along, expected, atol=1e-15)


def test_translational_connection():
    defect = geo.DefectParams(b=2.0)
    x = np.array([0.6, -0.8, 0.0])
    tangent = np.array([-x[1], x[0], 0.0])
    along = geo.translational_connection(defect, x) @ tangent
    np.testing.assert_allclose(along, [0.0, 0.0, defect.beta], atol=1e-15)
    # -d tau / d theta
    assert geo.translation_vector(defect, 1.0)[2] == pytest.approx(-defect.beta)


@pytest.mark.parametrize(
    "gamma, b, r, theta",
    [(0.0, 0.0, 1.0, 0.3), (math.pi / 2, 0.0, 2.0, 4.0), (-2.0, 1.5, 0.4, 6.0), (5.5, -3.0, 3.0, 1.0)],
)
def test_solder_form_metric(gamma, b, r, theta):
    defect = geo.DefectParams(gamma=gamma, b=b)
    np.testing.assert_allclose(
        geo.metric_from_solder(defect, r, theta, z=0.7),
        geo.metric_tensor(defect, r),
        atol=1e-12,
    )


def test_on_axis():
    defect = geo.DefectParams(gamma=1.0)
    with pytest.raises(OnAxis):
        geo.solder_form(defect, (0.0, 0.0, 1.0))
    with pytest.raises(OnAxis):
        geo.metric_tensor(defect, 0.0)
    with pytest.raises(DomainError):
        geo.metric_tensor(defect, -1.0)


def test_curvature_and_torsion():
    defect = geo.DefectParams(gamma=math.pi / 2, b=0.25)
    assert geo.scalar_curvature_coefficient(defect) == pytest.approx(math.pi / 0.75)
    assert geo.gaussian_curvature_coefficient(defect) == pytest.approx(
        0.5 * geo.scalar_curvature_coefficient(defect)
    )
    assert geo.scalar_curvature(defect).support == "axis"
    assert geo.torsion(defect).coefficient == 0.25
    np.testing.assert_array_equal(geo.frank_vector(defect), [0.0, 0.0, math.pi / 2])
    np.testing.assert_array_equal(geo.burgers_vector(defect), [0.0, 0.0, 0.25])
    flat = geo.DefectParams()
    assert geo.scalar_curvature_coefficient(flat) == 0.0
    assert geo.torsion_coefficient(flat) == 0.0


def test_cone_embedding():
    sigma, r, theta = 0.6, 1.7, 2.2
    point = geo.cone_embedding(sigma, r, theta)
    assert np.linalg.norm(point) == pytest.approx(r, rel=1e-15)
    metric = geo.first_fundamental_form(sigma, r, theta)
    np.testing.assert_allclose(metric, np.diag([1.0, (sigma * r) ** 2]), atol=1e-7)

    h = 1e-6
    x_r = (geo.cone_embedding(sigma, r + h, theta) - geo.cone_embedding(sigma, r - h, theta)) / (
        2 * h
    )
    normal = geo.cone_normal(sigma, theta)
    assert np.linalg.norm(normal) == pytest.approx(1.0, abs=1e-15)
    assert normal @ x_r == pytest.approx(0.0, abs=1e-9)


def test_cone_curvatures():
    k1, k2 = geo.principal_curvatures(0.5, 1.0)
    assert k1 == 0.0
    assert k2 == pytest.approx(math.sqrt(3), rel=1e-15)
    assert geo.mean_curvature(0.5, 1.0) == pytest.approx(0.8660254037844386, abs=1e-12)
    assert geo.gaussian_curvature(0.5, 1.0) == 0.0
    np.testing.assert_allclose(geo.second_fundamental_form(0.5, 1.0), np.diag([0.0, math.sqrt(3)]))
    # flat plane
    assert geo.mean_curvature(1.0, 2.0) == 0.0


@pytest.mark.parametrize("sigma", [0.0, 1.2])
def test_cone_domain(sigma):
    with pytest.raises(DomainError):
        geo.cone_embedding(sigma, 1.0, 0.0)
    with pytest.raises(DomainError):
        geo.principal_curvatures(sigma, 1.0)


def test_cone_apex():
    with pytest.raises(OnAxis):
        geo.cone_embedding(0.5, 0.0, 0.0)


@pytest.mark.parametrize("sigma", [0.3, 0.75, 1.0])
def test_gauss_bonnet(sigma):
    result = geo.gauss_bonnet_check(sigma, 2.0)
    assert result == pytest.approx(2 * math.pi * sigma, abs=1e-10)
    # apex curvature is the deficit angle
    assert 2 * math.pi - result == pytest.approx(2 * math.pi * (1 - sigma), abs=1e-10)


@pytest.mark.parametrize("gamma", [-4.0, 1.1, 5.5])
def test_rotation_group_property(gamma):
    defect = geo.DefectParams(gamma=gamma)
    for theta1, theta2 in [(0.3, 1.2), (2.0, -0.7), (5.0, 4.0)]:
        np.testing.assert_allclose(
            geo.rotation_matrix(defect, theta1) @ geo.rotation_matrix(defect, theta2),
            geo.rotation_matrix(defect, theta1 + theta2),
            atol=1e-14,
        )
    np.testing.assert_array_equal(geo.rotation_matrix(defect, 0.0), np.eye(3))


@pytest.mark.parametrize("sigma", [0.3, 0.6, 0.9])
def test_cone_embedding_isometry_order(sigma):
    r, theta = 1.7, 2.2
    exact = np.diag([1.0, (sigma * r) ** 2])
    errors = [
        np.max(np.abs(geo.first_fundamental_form(sigma, r, theta, h=h) - exact))
        for h in (0.1, 0.05, 0.025)
    ]
    assert errors[0] > errors[1] > errors[2]
    for coarse, fine in zip(errors, errors[1:]):
        assert math.log2(coarse / fine) >= 1.9
