"""
numerical constants shared across modules

These are the library defaults.  Run-time defaults for the CLI come from
``configs/iconfig.yml``.
"""

import math

TWO_PI = 2 * math.pi

# special functions
DEFAULT_TARGET_REL_ERR = 1e-12
DEFAULT_MAX_TERMS = 500
ASYMPTOTIC_MIN_X = 40.0  # Hankel expansion only when x >= max(this, nu**2)
UNIFORM_MIN_X = 200.0  # large-order uniform expansion for x >= this when x < nu**2

# truncation defaults for propagator sums and integrals
DEFAULT_M_MAX = 20
DEFAULT_N_WIND_MAX = 20
DEFAULT_N_SERIES_MAX = 60
DEFAULT_QUAD_REL_TOL = 1e-9
DEFAULT_LAMBDA_CUTOFF = 40.0

# spectrum bookkeeping
DEFAULT_GROUPING_TOL = 1e-9

# finite-difference oracle
MIN_GRID_POINTS = 100
GRID_MARGIN_LENGTHS = 6.0  # oscillator lengths beyond the classical turning point
FD_RICHARDSON_LIMIT = 1e-3
