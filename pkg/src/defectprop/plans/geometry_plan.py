"""
Geometry report: defect parameters, Frank and Burgers vectors, curvature
coefficients and cone curvatures on an r grid.
"""

import logging
import math

from .. import defect_geometry as geo
from ..utils.table_output import Table

logger = logging.getLogger(__name__)

COLUMNS = [
    "r",
    "gamma",
    "b",
    "sigma",
    "beta",
    "frank_z",
    "burgers_z",
    "scalar_curvature_coeff",
    "gaussian_curvature_coeff",
    "torsion_coeff",
    "k1",
    "k2",
    "mean_curvature",
    "gaussian_curvature",
    "gauss_bonnet",
    "gauss_bonnet_residual",
]
NOT_EMBEDDED = "n/a"


def geometry_report(config):
    """One row per radius of ``geometry.r_grid``."""
    defect = config.defect
    quadrature_n = config.geometry["quadrature_n"]
    table = Table(
        command="geometry",
        columns=list(COLUMNS),
        meta={"defect": {"gamma": defect.gamma, "b": defect.b}, "quadrature_n": quadrature_n},
    )
    sigma = defect.sigma
    embedded = 0 < sigma <= 1
    if not embedded:
        logger.info("sigma=%g > 1: no embedding in Euclidean 3-space", sigma)
    for r in config.geometry["r_grid"]:
        row = {
            "r": r,
            "gamma": defect.gamma,
            "b": defect.b,
            "sigma": sigma,
            "beta": defect.beta,
            "frank_z": float(geo.frank_vector(defect)[2]),
            "burgers_z": float(geo.burgers_vector(defect)[2]),
            "scalar_curvature_coeff": geo.scalar_curvature_coefficient(defect),
            "gaussian_curvature_coeff": geo.gaussian_curvature_coefficient(defect),
            "torsion_coeff": geo.torsion_coefficient(defect),
        }
        if embedded:
            k1, k2 = geo.principal_curvatures(sigma, r)
            boundary = geo.gauss_bonnet_check(sigma, r, quadrature_n)
            row.update(
                k1=k1,
                k2=k2,
                mean_curvature=geo.mean_curvature(sigma, r),
                gaussian_curvature=geo.gaussian_curvature(sigma, r),
                gauss_bonnet=boundary,
                gauss_bonnet_residual=abs(2 * math.pi - boundary - defect.gamma),
            )
        else:
            row.update({name: NOT_EMBEDDED for name in COLUMNS[10:]})
        table.add_row(row)
    return table
