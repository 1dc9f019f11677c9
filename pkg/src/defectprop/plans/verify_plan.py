"""
Acceptance suite: every closed form against an independent oracle.

Each check yields rows ``(check, case, value, tolerance, status, detail)``;
``status`` is ``pass``, ``fail`` or ``skipped``.  A check that raises a
:class:`~defectprop.utils.exceptions.DefectPropError` gets one ``fail`` row
naming the exception and the suite moves on.

.. autosummary::
    ~verify_report
    ~failed
"""

import logging
import math

import numpy as np

from .. import defect_geometry as geo
from .. import propagator as prop
from .. import spectrum as sp
from .. import verification_oracles as vo
from ..utils.exceptions import ConfigError
from ..utils.exceptions import DefectPropError
from ..utils.exceptions import FallToCenter
from ..utils.exceptions import GridTooCoarse
from ..utils.table_output import Table

logger = logging.getLogger(__name__)

COLUMNS = ["check", "case", "value", "tolerance", "status", "detail"]
PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

# r1, theta1, r2, theta2 shared by the propagator checks
SAMPLE_POINT = (0.8, 0.0, 1.3, 0.5)


def _result(case, value, tolerance, detail=""):
    status = PASS if value <= tolerance else FAIL
    return dict(case=case, value=value, tolerance=tolerance, status=status, detail=detail)


def _within(case, value, low, high, detail=""):
    status = PASS if low <= value <= high else FAIL
    return dict(
        case=case, value=value, tolerance=f"{low:g}..{high:g}", status=status, detail=detail
    )


def _skipped(case, detail):
    return dict(case=case, status=SKIPPED, detail=detail)


def _worst_relative(levels, exact):
    return max(abs(a / b - 1) for a, b in zip(levels, exact))


def _medium(sigma, alpha=0.0, kappa=0.0, b=0.0, **couplings):
    return (
        geo.DefectParams.from_sigma(sigma, b=b),
        sp.Couplings(alpha=alpha, kappa=kappa, **couplings),
    )


def _query(tau, k=0.0):
    r1, theta1, r2, theta2 = SAMPLE_POINT
    return prop.PropagatorQuery(r1=r1, theta1=theta1, r2=r2, theta2=theta2, tau=tau, k=k)


def check_spectrum_oracle(config):
    """Finite-difference levels against hbar omega (2n + mu + 1)."""
    settings = config.verify
    grid = vo.RadialGrid(**settings["grid"])
    n_eigs = settings["n_eigs"]
    m_min, m_max = settings["m_range"]
    for sigma in settings["sigma"]:
        for kappa in settings["kappa"]:
            for shift in settings["xi"]:
                defect, couplings = _medium(sigma, alpha=shift, kappa=kappa)
                omega = couplings.bound_omega(sigma)
                for m in range(m_min, m_max + 1):
                    case = f"sigma={sigma:g} kappa={kappa:g} xi={shift:g} m={m}"
                    try:
                        mu = sp.channel_index(m, defect, couplings, 0.0)
                    except FallToCenter as exc:
                        yield _skipped(case, f"falls to the center (radicand {exc.radicand:g})")
                        continue
                    try:
                        levels = vo.radial_eigensolve_fd(mu, omega, grid, n_eigs, couplings)
                    except GridTooCoarse as exc:
                        yield dict(case=case, status=FAIL, detail=str(exc))
                        continue
                    exact = [
                        sp.transverse_energy(sp.QuantumNumbers(n=n, m=m), defect, couplings)
                        for n in range(n_eigs)
                    ]
                    yield _result(case, _worst_relative(levels, exact), 1e-4)


def check_cone_oracle(config):
    """Finite-difference cone levels against 2 n_r + 1 + |m| / sigma."""
    settings = config.verify
    grid = vo.RadialGrid(**settings["grid"])
    n_eigs = settings["n_eigs"]
    couplings = sp.Couplings()
    for sigma in (0.5, 0.75):
        for m in (0, 1, 2):
            levels = vo.cone_schrodinger_eigensolve(sigma, m, 1.0, grid, n_eigs, couplings)
            exact = [
                sp.schrodinger_cone_energy(n, m, 0.0, sigma, couplings) for n in range(n_eigs)
            ]
            yield _result(f"sigma={sigma:g} m={m}", _worst_relative(levels, exact), 1e-4)


def check_discrepancy(config):
    """The two towers at sigma = 0.5, kappa = 0, m = 1 differ, and each oracle confirms its own."""
    report = sp.discrepancy_report(0.5, 0.0, 1)
    yield _result("mu_path_integral", abs(report.mu_path_integral - math.sqrt(3.25)), 1e-6)
    yield _result("mu_schrodinger", abs(report.mu_schrodinger - 2.0), 0.0)
    grid = vo.RadialGrid(**config.verify["grid"])
    fd = vo.radial_eigensolve_fd(report.mu_path_integral, 1.0, grid, 1)[0]
    yield _result("fd ground level", abs(fd / (report.mu_path_integral + 1) - 1), 1e-4)
    cone = vo.cone_schrodinger_eigensolve(0.5, 1, 1.0, grid, 1)[0]
    yield _result("cone ground level", abs(cone / 3.0 - 1), 1e-4)
    yield _within(
        "towers differ",
        report.delta,
        0.1,
        math.inf,
        detail="mu_S - mu_PI",
    )


def check_hille_hardy(config):
    """Closed-form R_m against the Laguerre series."""
    policy = config.truncation
    settings = [(0.5, 0.0, 0.0), (0.8, 0.5, 0.3), (1.5, 0.0, 0.25)]
    for sigma, kappa, shift in settings:
        defect, couplings = _medium(sigma, alpha=shift, kappa=kappa)
        for phi in (0.2, 0.7, 2.0):
            query = _query(phi / couplings.bound_omega(sigma))
            closed = prop.radial_propagator_closed(1, query, defect, couplings, config.accuracy)
            series = prop.radial_propagator_series(
                1, query, defect, couplings, policy.n_series_max, policy.quad_rel_tol
            )
            case = f"sigma={sigma:g} kappa={kappa:g} xi={shift:g} omega_tau={phi:g}"
            yield _result(case, abs(closed / series.value - 1), 1e-8, f"{series.n_terms} terms")


def check_semigroup(config):
    """Quadrature convolution of two R_m against R_m at the summed time."""
    defect, couplings = _medium(0.5)
    r1, _, r2, _ = SAMPLE_POINT
    residual = vo.semigroup_residual(1, r1, r2, 0.3, 0.5, defect, couplings)
    yield _result("sigma=0.5 m=1 tau=0.3+0.5", residual, 1e-6)


def _winding_medium():
    # b = pi gives beta = 1/2 exactly; xi = 0.5 - 0.5 * 0.4 = 0.3
    return _medium(0.8, alpha=0.5, kappa=2.0, b=math.pi), 0.4


def check_winding(config):
    """Winding-number resummation and independence of the choice of alpha'."""
    (defect, couplings), k = _winding_medium()
    policy, accuracy = config.truncation, config.accuracy
    query = _query(0.5, k=k)
    partial_wave = prop.transverse_propagator(query, defect, couplings, policy, accuracy)
    natural = prop.winding_sum(query, defect, couplings, -couplings.alpha, policy, accuracy)
    shifted = prop.winding_sum(
        query, defect, couplings, defect.beta * k - couplings.alpha, policy, accuracy
    )
    yield _result("alpha'=-alpha vs partial waves", abs(natural / partial_wave - 1), 1e-6)
    yield _result("alpha'=beta k - alpha vs alpha'=-alpha", abs(shifted / natural - 1), 1e-8)


def check_trace(config):
    """Quadrature trace of K against the sum over the spectrum."""
    defect, couplings = _medium(0.8, alpha=0.3, kappa=0.5)
    tau_e = 1.0 / couplings.bound_omega(defect.sigma)
    policy = config.truncation
    quadrature = prop.transverse_trace(defect, couplings, 0.0, tau_e, policy)
    spectral = prop.spectral_trace(defect, couplings, 0.0, tau_e, policy)
    yield _result("sigma=0.8 xi=0.3 kappa=0.5 omega_tau=1", abs(quadrature / spectral - 1), 1e-6)


def check_landau(config):
    """No defect, no trap: levels collapse onto 2 hbar omega_L (nbar + 1/2)."""
    defect = geo.DefectParams()
    couplings = sp.Couplings(omega_L=1.0, omega_0=0.0)
    lines = sp.spectrum_table(defect, couplings, 0.0, 5, (-10, 10))
    for nbar in range(6):
        line = lines[nbar]
        expected = sp.landau_levels(nbar, 0.0, couplings)
        yield _result(f"nbar={nbar} energy", abs(line.energy - expected), 1e-12)
        yield _result(
            f"nbar={nbar} degeneracy",
            abs(line.degeneracy - (nbar + 11)),
            0,
            detail=f"{line.degeneracy} states, unbounded={line.unbounded_degeneracy}",
        )


def check_xi_sufficiency(config):
    """(alpha, beta, k) enter mu and E~ only through xi = alpha - beta k."""
    first = (geo.DefectParams.from_sigma(0.8), sp.Couplings(alpha=0.7, kappa=0.5), 5.0)
    second = (
        geo.DefectParams(gamma=first[0].gamma, b=math.pi),
        sp.Couplings(alpha=0.2, kappa=0.5),
        -1.0,
    )
    worst = 0.0
    for m in range(-3, 4):
        for n in range(4):
            values = []
            for defect, couplings, k in (first, second):
                qn = sp.QuantumNumbers(n=n, m=m, k=k)
                values.append(
                    (
                        sp.channel_index(m, defect, couplings, k),
                        sp.transverse_energy(qn, defect, couplings),
                    )
                )
            worst = max(worst, *(abs(a - b) for a, b in zip(*values)))
    yield _result("(0.7, 0, 5) vs (0.2, 0.5, -1)", worst, 0.0, detail="bit-identical")


def check_orthonormality(config):
    """Gauss-Laguerre Gram matrix of psi_mn, 0 <= n <= 20."""
    settings = [
        (1.0, 0.0, 0.0, 0),
        (0.8, 0.3, 0.5, 1),
        (1.5, 0.0, 0.0, -2),
    ]
    for sigma, alpha, kappa, m in settings:
        defect, couplings = _medium(sigma, alpha=alpha, kappa=kappa)
        gram = vo.orthonormality_gram(m, 20, defect, couplings)
        deviation = float(np.max(np.abs(gram - np.eye(gram.shape[0]))))
        yield _result(f"sigma={sigma:g} xi={alpha:g} kappa={kappa:g} m={m}", deviation, 1e-8)


def _weyl_points(count):
    """Deterministic equidistributed points in the unit 4-cube."""
    steps = np.sqrt([2.0, 3.0, 5.0, 7.0])
    return np.mod(np.outer(np.arange(1, count + 1), steps), 1.0)


def check_geometry(config):
    """Gauss-Bonnet, solder-form metric and cone mean curvature."""
    quadrature_n = config.geometry["quadrature_n"]
    for sigma in (0.3, 0.6, 0.9):
        result = geo.gauss_bonnet_check(sigma, 1.0, quadrature_n)
        yield _result(f"gauss-bonnet sigma={sigma:g}", abs(result - 2 * math.pi * sigma), 1e-10)

    worst = 0.0
    for u in _weyl_points(100):
        defect = geo.DefectParams(gamma=-6.0 + 12.0 * u[0], b=-3.0 + 6.0 * u[1])
        r, theta = 0.1 + 2.9 * u[2], 2 * math.pi * u[3]
        deviation = geo.metric_from_solder(defect, r, theta) - geo.metric_tensor(defect, r)
        worst = max(worst, float(np.max(np.abs(deviation))))
    yield _result("solder metric, 100 points", worst, 1e-12)

    mean = geo.mean_curvature(0.5, 1.0)
    yield _result("mean curvature sigma=0.5 r=1", abs(mean - math.sqrt(3) / 2), 1e-12)


def _test_function(r, theta):
    return math.exp(-0.5 * (r - 2.0) ** 2) * (1.0 + 0.3 * math.cos(theta))


def check_delta_limit(config):
    """The one-step kernel tends to a delta function with an O(epsilon) error."""
    defect, couplings = _medium(0.8)
    epsilons = (1e-2, 5e-3, 2.5e-3)
    area1 = vo.delta_limit_scan(2.0, 1.0, _test_function, epsilons, defect, couplings)
    yield _within("order, area1 normalisation", area1.order, 0.8, 1.2)
    area2 = vo.delta_limit_scan(
        2.0, 1.0, _test_function, epsilons[:1], defect, couplings, convention="area2"
    )
    yield _result(
        "area2 vs area1 at epsilon=1e-2",
        abs(area2.values[0] / area1.values[0] - 1),
        1e-12,
    )


def check_fd_order(config):
    """Grid-refinement order of the finite-difference oracle."""
    grid = vo.RadialGrid(**config.verify["grid"])
    for mu in (0.5, math.sqrt(3.25)):
        order = vo.fd_convergence_order(mu, 1.0, grid)
        yield _within(f"mu={mu:.7g} ground level", order, 1.8, 2.2)


def check_special_functions(config):
    """Jacobi-Anger, the upsilon convolution and the Edwards-Gulyaev approach."""
    for z in (0.5, 5.0, 20.0):
        yield _result(f"jacobi-anger z={z:g}", vo.jacobi_anger_check(z, 0.7, 60), 1e-10)
    residual = vo.convolution_quadrature(1.3, [(0.5, 1.2), (2.0, 0.7)], 0.4)
    yield _result("upsilon convolution mu=1.3 phi=0.4", residual, 1e-6)
    residuals = vo.edwards_gulyaev_residuals(2.0, [10.0, 50.0, 200.0])
    decreasing = all(a > b for a, b in zip(residuals, residuals[1:]))
    yield dict(
        case="edwards-gulyaev nu=2 z=10,50,200",
        value=residuals[-1],
        status=PASS if decreasing else FAIL,
        detail="residual decreases with z",
    )


CHECKS = {
    "spectrum_oracle": check_spectrum_oracle,
    "cone_oracle": check_cone_oracle,
    "discrepancy": check_discrepancy,
    "hille_hardy": check_hille_hardy,
    "semigroup": check_semigroup,
    "winding": check_winding,
    "trace": check_trace,
    "landau": check_landau,
    "xi_sufficiency": check_xi_sufficiency,
    "orthonormality": check_orthonormality,
    "geometry": check_geometry,
    "delta_limit": check_delta_limit,
    "fd_order": check_fd_order,
    "special_functions": check_special_functions,
}


def verify_report(config):
    """
    Run the checks named in ``verify.checks`` (all when null).

    Raises:
        ConfigError: unknown check name
    """
    selected = config.verify["checks"] or list(CHECKS)
    unknown = sorted(set(selected) - set(CHECKS))
    if unknown:
        raise ConfigError(f"unknown checks {unknown}", field="verify.checks")
    table = Table(command="verify", columns=list(COLUMNS), meta={"checks": list(selected)})
    for name in selected:
        logger.info("check %s", name)
        try:
            for row in CHECKS[name](config):
                table.add_row(dict(check=name, **row))
        except DefectPropError as exc:
            logger.warning("check %s raised %s: %s", name, type(exc).__name__, exc)
            table.add_row(
                dict(check=name, status=FAIL, detail=f"{type(exc).__name__}: {exc}")
            )
    logger.info("verify: %d failures in %d rows", failed(table), len(table.rows))
    return table


def failed(table):
    """Number of ``fail`` rows."""
    index = table.columns.index("status")
    return sum(1 for row in table.rows if row[index] == FAIL)
