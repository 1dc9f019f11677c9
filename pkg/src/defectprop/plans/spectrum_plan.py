"""
Spectrum table: enumerated levels E_mnk, grouped by degeneracy.

Channels that fall to the center are reported with their own status row;
the remaining channels are still tabulated.
"""

import logging

from .. import spectrum as sp
from ..utils.exceptions import FallToCenter
from ..utils.table_output import Table

logger = logging.getLogger(__name__)

COLUMNS = ["n", "m", "k", "mu", "E_transverse", "E_total", "group_id", "status"]
COMPARE_COLUMNS = ["mu_S", "delta"]
STATUS_OK = "ok"
STATUS_FALL_TO_CENTER = "fall_to_center"


def spectrum_report(config, compare=None):
    """Tabulate the spectrum of ``config``; ``compare="schrodinger-cone"`` adds mu_S and delta."""
    settings = config.spectrum
    defect, couplings = config.defect, config.couplings
    k = settings["k"]
    n_max = settings["n_max"]
    m_min, m_max = settings["m_range"]
    compare = compare or settings["compare"]
    columns = COLUMNS + (COMPARE_COLUMNS if compare else [])
    unbounded = sp.landau_degeneracy_unbounded(defect, couplings, k)
    table = Table(
        command="spectrum",
        columns=columns,
        meta={
            "k": k,
            "n_max": n_max,
            "m_range": [m_min, m_max],
            "xi": sp.xi(defect, couplings, k),
            "unbounded_degeneracy": unbounded,
            "compare": compare,
        },
    )

    entries, index, failed = [], {}, []
    for m in range(m_min, m_max + 1):
        try:
            mu = sp.channel_index(m, defect, couplings, k)
        except FallToCenter as exc:
            logger.info("channel m=%d falls to the center (radicand %g)", m, exc.radicand)
            failed.append(m)
            continue
        for n in range(n_max + 1):
            qn = sp.QuantumNumbers(n=n, m=m, k=k)
            energy = sp.total_energy(qn, defect, couplings)
            entries.append((energy, qn))
            index[qn] = (mu, sp.transverse_energy(qn, defect, couplings), energy)

    lines = sp.group_levels(entries, settings["grouping_tol"], unbounded)
    for group_id, line in enumerate(lines):
        for qn in line.members:
            mu, e_transverse, e_total = index[qn]
            row = {
                "n": qn.n,
                "m": qn.m,
                "k": k,
                "mu": mu,
                "E_transverse": e_transverse,
                "E_total": e_total,
                "group_id": group_id,
                "status": STATUS_OK,
            }
            if compare:
                report = sp.discrepancy_report(defect.sigma, couplings.kappa, qn.m)
                row.update(mu_S=report.mu_schrodinger, delta=report.delta)
            table.add_row(row)
    for m in failed:
        table.add_row({"m": m, "k": k, "status": STATUS_FALL_TO_CENTER})

    logger.info(
        "spectrum: %d states in %d levels, %d channels fall to the center",
        len(entries),
        len(lines),
        len(failed),
    )
    return table
