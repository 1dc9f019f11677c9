"""
power-law slopes and convergence orders from sampled data
"""

import math

import numpy as np


def loglog_slope(x, y):
    """
    least-squares slope of log|y| against log(x)

    Used to measure power laws such as psi ~ r**mu near the axis.
    """
    if len(x) != len(y):
        raise ValueError(
            f"X & Y arrays must be same length to analyze, x:{len(x)} y:{len(y)}"
        )
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.abs(np.asarray(y, dtype=float)))
    slope, _intercept = np.polyfit(lx, ly, 1)
    return float(slope)


def observed_order(v1, v2, v3, ratio=2.0):
    r"""
    three-point Richardson estimate of the convergence order

    ``v1, v2, v3`` are results at step sizes h, h/ratio, h/ratio**2:
    :math:`p = \log(|v_1 - v_2| / |v_2 - v_3|) / \log(\mathrm{ratio})`.
    """
    d12 = abs(v1 - v2)
    d23 = abs(v2 - v3)
    if d12 == 0 or d23 == 0:
        return math.inf
    return math.log(d12 / d23) / math.log(ratio)
