"""
Propagator samples on the configured points and Euclidean times.

Rows (``quantity`` column):

=============== ===========================================================
quantity        value / reference
=============== ===========================================================
``radial``      closed-form R_m / Hille-Hardy series
``free_limit``  R_m at omega = ``free_limit_omega`` / free radial kernel
``semigroup``   r-quadrature of R_m(tau1) R_m(tau2) / R_m(tau1 + tau2)
``transverse``  partial-wave sum K / winding sum
``winding``     K~_n / C_n
=============== ===========================================================

A sample that cannot be evaluated keeps its row, with ``status`` naming the
reason (``fall_to_center``, ``tail_too_large``, ``quadrature_failure`` or
``non_convergence``).
"""

import logging
from dataclasses import replace

from .. import propagator as prop
from ..spectrum import channel_index
from ..utils.exceptions import FallToCenter
from ..utils.exceptions import NonConvergence
from ..utils.exceptions import QuadratureFailure
from ..utils.exceptions import TailTooLarge
from ..utils.table_output import Table
from ..utils.table_output import complex_fields
from ..verification_oracles import semigroup_residual

logger = logging.getLogger(__name__)

COLUMNS = [
    "quantity",
    "m",
    "n_wind",
    "r1",
    "theta1",
    "r2",
    "theta2",
    "tau",
    "value_re",
    "value_im",
    "reference_re",
    "reference_im",
    "residual",
    "status",
]

FAILURE_STATUS = (
    (FallToCenter, "fall_to_center"),
    (TailTooLarge, "tail_too_large"),
    (QuadratureFailure, "quadrature_failure"),
    (NonConvergence, "non_convergence"),
)
SAMPLE_ERRORS = tuple(kind for kind, _status in FAILURE_STATUS)


def _row(quantity, query, value=None, reference=None, m=None, n_wind=None, status="ok"):
    row = {
        "quantity": quantity,
        "m": m,
        "n_wind": n_wind,
        "r1": query.r1,
        "theta1": query.theta1,
        "r2": query.r2,
        "theta2": query.theta2,
        "tau": query.tau_e,
        "status": status,
    }
    if value is not None:
        row.update(complex_fields("value", value))
    if reference is not None:
        row.update(complex_fields("reference", reference))
        if value is not None:
            row["residual"] = abs(value / reference - 1) if reference else abs(value)
    return row


def _failed(quantity, query, exc, value=None, m=None, n_wind=None):
    """Row for a sample whose evaluation raised one of SAMPLE_ERRORS."""
    status = next(text for kind, text in FAILURE_STATUS if isinstance(exc, kind))
    if m is None:
        m = getattr(exc, "m", None)
    logger.warning("%s sample at tau=%g: %s", quantity, query.tau_e, exc)
    return _row(quantity, query, value=value, m=m, n_wind=n_wind, status=status)


def propagator_report(config):
    """Sample every propagator quantity over points x tau."""
    settings = config.propagator
    defect, couplings = config.defect, config.couplings
    policy, accuracy = config.truncation, config.accuracy
    alpha_prime = settings["alpha_prime"]
    if alpha_prime is None:
        alpha_prime = -couplings.alpha
    free_couplings = replace(couplings, omega_0=settings["free_limit_omega"], omega_L=0.0)
    tau1, tau2 = settings["semigroup_split"]
    table = Table(
        command="propagator",
        columns=list(COLUMNS),
        meta={
            "k": settings["k"],
            "alpha_prime": alpha_prime,
            "m_max": policy.m_max,
            "n_wind_max": policy.n_wind_max,
            "n_series_max": policy.n_series_max,
            "semigroup_split": [tau1, tau2],
        },
    )

    for r1, theta1, r2, theta2 in settings["points"]:
        for tau in settings["tau"]:
            query = prop.PropagatorQuery(
                r1=r1, theta1=theta1, r2=r2, theta2=theta2, tau=tau, k=settings["k"]
            )
            for m in settings["m_values"]:
                try:
                    closed = prop.radial_propagator_closed(m, query, defect, couplings, accuracy)
                except SAMPLE_ERRORS as exc:
                    table.add_row(_failed("radial", query, exc, m=m))
                    continue
                try:
                    series = prop.radial_propagator_series(
                        m, query, defect, couplings, policy.n_series_max, policy.quad_rel_tol
                    )
                except SAMPLE_ERRORS as exc:
                    table.add_row(_failed("radial", query, exc, value=closed, m=m))
                else:
                    table.add_row(_row("radial", query, closed, series.value, m=m))
                try:
                    mu = channel_index(m, defect, couplings, query.k)
                    free = prop.radial_propagator_closed(
                        m, query, defect, free_couplings, accuracy
                    )
                    reference = prop.free_radial_kernel(mu, r1, r2, tau, couplings, accuracy)
                except SAMPLE_ERRORS as exc:
                    table.add_row(_failed("free_limit", query, exc, m=m))
                else:
                    table.add_row(_row("free_limit", query, free, reference, m=m))

            try:
                transverse = prop.transverse_propagator(
                    query, defect, couplings, policy, accuracy
                )
                resummed = prop.winding_sum(
                    query, defect, couplings, alpha_prime, policy, accuracy
                )
            except FallToCenter as exc:
                table.add_row(_failed("transverse", query, exc))
                continue
            except SAMPLE_ERRORS as exc:
                table.add_row(_failed("transverse", query, exc))
            else:
                table.add_row(_row("transverse", query, transverse, resummed))
            for n in settings["windings"]:
                try:
                    value = prop.winding_subpropagator(
                        n, query, defect, couplings, alpha_prime, policy, accuracy
                    )
                except SAMPLE_ERRORS as exc:
                    table.add_row(_failed("winding", query, exc, n_wind=n))
                    continue
                coefficient = prop.winding_coefficient(n, alpha_prime).value
                row = _row("winding", query, value, coefficient, n_wind=n)
                del row["residual"]
                table.add_row(row)

        split = prop.PropagatorQuery(
            r1=r1, theta1=theta1, r2=r2, theta2=theta2, tau=tau1 + tau2, k=settings["k"]
        )
        for m in settings["m_values"]:
            try:
                residual = semigroup_residual(
                    m, r1, r2, tau1, tau2, defect, couplings, k=settings["k"]
                )
            except SAMPLE_ERRORS as exc:
                table.add_row(_failed("semigroup", split, exc, m=m))
                continue
            row = _row("semigroup", split, m=m)
            row["residual"] = residual
            table.add_row(row)

    logger.info("propagator: %d rows", len(table.rows))
    return table
