"""
Real-valued special functions for the dispiration problem.

Modified Bessel functions of real nonnegative order and argument, the log
gamma function, generalized Laguerre polynomials, the terminating confluent
hypergeometric series and the one-term Edwards-Gulyaev asymptotic form.

Every kernel in :mod:`defectprop.propagator` works with
:func:`bessel_i_scaled` (``exp(-x) * I_nu(x)``) so that the exponential
growth of ``I_nu`` can be cancelled analytically against the Gaussian
factors of the kernels.

.. autosummary::
    ~AccuracyPolicy
    ~bessel_i
    ~bessel_i_scaled
    ~log_bessel_i
    ~hankel_asymptotic_series
    ~uniform_asymptotic_log
    ~log_gamma
    ~laguerre
    ~confluent_hypergeometric_terms
    ~confluent_hypergeometric_polynomial
    ~edwards_gulyaev_asymptotic
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .utils.constants import ASYMPTOTIC_MIN_X
from .utils.constants import DEFAULT_MAX_TERMS
from .utils.constants import DEFAULT_TARGET_REL_ERR
from .utils.constants import UNIFORM_MIN_X
from .utils.exceptions import DomainError
from .utils.exceptions import NonConvergence

logger = logging.getLogger(__name__)

LOG_FLOAT_MAX = math.log(np.finfo(float).max)
_RESCALE_AT = 1e280


@dataclass(frozen=True)
class AccuracyPolicy:
    """Accuracy target and term budget of the series evaluations."""

    target_rel_err: float = DEFAULT_TARGET_REL_ERR
    max_terms: int = DEFAULT_MAX_TERMS

    def __post_init__(self):
        """Validate the policy."""
        if not self.target_rel_err > 0:
            raise DomainError(f"target_rel_err must be > 0, got {self.target_rel_err}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms}")


DEFAULT_ACCURACY = AccuracyPolicy()


def _check_order_argument(nu, x):
    if not nu >= 0:
        raise DomainError(f"Bessel order must be >= 0, got nu={nu}")
    if not x >= 0:
        raise DomainError(f"Bessel argument must be >= 0, got x={x}")


def _log_series(nu, x, policy):
    """ln I_nu(x) from the ascending series, all terms positive."""
    log_first = nu * math.log(x / 2) - math.lgamma(nu + 1)
    q = 0.25 * x * x
    stop = 1e-3 * policy.target_rel_err
    term = 1.0
    total = 1.0
    log_offset = 0.0
    for k in range(1, policy.max_terms + 1):
        ratio = q / (k * (k + nu))
        term *= ratio
        total += term
        if total > _RESCALE_AT:
            term /= total
            log_offset += math.log(total)
            total = 1.0
        if ratio < 1 and term * ratio / (1 - ratio) <= stop * total:
            logger.debug("I_%g(%g): series converged after %d terms", nu, x, k)
            return log_first + log_offset + math.log(total)
    raise NonConvergence(
        f"I_nu series for nu={nu}, x={x} not converged in {policy.max_terms} terms"
    )


def hankel_asymptotic_series(nu, x, policy=None):
    r"""
    Large-argument expansion of :math:`e^{-x} I_\nu(x)`.

    :math:`e^{-x}I_\nu(x) \sim (2\pi x)^{-1/2}\sum_k (-1)^k a_k(\nu) x^{-k}`,
    summed until the terms drop below the target or start to grow.

    Raises:
        NonConvergence: smallest term still above the target
    """
    policy = policy or DEFAULT_ACCURACY
    if not x > 0:
        raise DomainError(f"asymptotic expansion needs x > 0, got {x}")
    four_nu2 = 4.0 * nu * nu
    term = 1.0
    total = 1.0
    for k in range(1, policy.max_terms + 1):
        factor = -(four_nu2 - (2 * k - 1) ** 2) / (8.0 * k * x)
        new_term = term * factor
        if abs(new_term) > abs(term):
            break  # asymptotic series started diverging
        term = new_term
        total += term
        if term == 0 or abs(term) <= 1e-3 * policy.target_rel_err * abs(total):
            return total / math.sqrt(2 * math.pi * x)
    if abs(term) <= policy.target_rel_err * abs(total):
        return total / math.sqrt(2 * math.pi * x)
    raise NonConvergence(
        f"Hankel expansion for nu={nu}, x={x}: smallest term {term:.3e} too large"
    )


# Debye polynomials u_k(t), coefficients of t**k, t**(k+2), ..., t**(3k)
_DEBYE_POLYNOMIALS = (
    ((1.0,), 1.0),
    ((3.0, -5.0), 24.0),
    ((81.0, -462.0, 385.0), 1152.0),
    ((30375.0, -369603.0, 765765.0, -425425.0), 414720.0),
    (
        (4465125.0, -94121676.0, 349922430.0, -446185740.0, 185910725.0),
        39813120.0,
    ),
    (
        (
            1519035525.0,
            -49286948607.0,
            284499769554.0,
            -614135872350.0,
            566098157625.0,
            -188699385875.0,
        ),
        6688604160.0,
    ),
)


def _debye_u(k, t):
    coefficients, denominator = _DEBYE_POLYNOMIALS[k]
    t2 = t * t
    value = 0.0
    for c in reversed(coefficients):
        value = value * t2 + c
    return value * t**k / denominator


def uniform_asymptotic_log(nu, x):
    r"""
    ln I_nu(x) from the uniform large-order expansion.

    With :math:`z = x/\nu`, :math:`t = (1+z^2)^{-1/2}` and
    :math:`\eta = \sqrt{1+z^2} + \ln[z/(1+\sqrt{1+z^2})]`,
    :math:`I_\nu(\nu z) \sim e^{\nu\eta}(2\pi\nu)^{-1/2}(1+z^2)^{-1/4}
    \sum_k u_k(t)\nu^{-k}`.  Six terms; the first omitted one is below
    ``0.3 / (nu**2 + x**2)**2.5``.
    """
    if not (nu > 0 and x > 0):
        raise DomainError(f"uniform expansion needs nu > 0 and x > 0, got nu={nu}, x={x}")
    z = x / nu
    root = math.hypot(1.0, z)
    t = 1.0 / root
    eta = root + math.log(z / (1.0 + root))
    total = math.fsum(_debye_u(k, t) / nu**k for k in range(len(_DEBYE_POLYNOMIALS)))
    return (
        nu * eta
        - 0.5 * math.log(2 * math.pi * nu)
        - 0.5 * math.log(root)
        + math.log(total)
    )


def _use_asymptotic(nu, x):
    return x >= max(ASYMPTOTIC_MIN_X, nu * nu)


def _use_uniform(nu, x):
    return UNIFORM_MIN_X <= x < nu * nu


def log_bessel_i(nu, x, policy=None):
    """ln I_nu(x) for nu >= 0, x >= 0 (``-inf`` where I_nu(0) = 0)."""
    policy = policy or DEFAULT_ACCURACY
    _check_order_argument(nu, x)
    if x == 0:
        return 0.0 if nu == 0 else -math.inf
    if _use_asymptotic(nu, x):
        return x + math.log(hankel_asymptotic_series(nu, x, policy))
    if _use_uniform(nu, x):
        return uniform_asymptotic_log(nu, x)
    return _log_series(nu, x, policy)


def bessel_i(nu, x, policy=None):
    """
    Modified Bessel function of the first kind, I_nu(x), real nu, x >= 0.

    Hankel expansion for x >= max(40, nu**2), the uniform large-order
    expansion for 200 <= x < nu**2, the ascending series otherwise.
    Returns ``inf`` when the value exceeds the float range.
    """
    log_value = log_bessel_i(nu, x, policy)
    if log_value > LOG_FLOAT_MAX:
        return math.inf
    return math.exp(log_value)


def bessel_i_scaled(nu, x, policy=None):
    """exp(-x) * I_nu(x), finite for every x >= 0."""
    _check_order_argument(nu, x)
    if x == 0:
        return 1.0 if nu == 0 else 0.0
    if _use_asymptotic(nu, x):
        return hankel_asymptotic_series(nu, x, policy)
    if _use_uniform(nu, x):
        return math.exp(uniform_asymptotic_log(nu, x) - x)
    return math.exp(_log_series(nu, x, policy or DEFAULT_ACCURACY) - x)


def log_gamma(x):
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def laguerre(n, mu, x):
    """
    Generalized Laguerre polynomial L_n^(mu)(x) by the three-term recurrence.

    ``x`` may be a scalar or an array.
    """
    if n < 0:
        raise DomainError(f"Laguerre degree must be >= 0, got n={n}")
    if not mu > -1:
        raise DomainError(f"Laguerre parameter must be > -1, got mu={mu}")
    x = np.asarray(x, dtype=float)
    previous = np.ones_like(x)
    if n == 0:
        return previous if previous.ndim else float(previous)
    current = 1.0 + mu - x
    for k in range(1, n):
        previous, current = current, (
            (2 * k + 1 + mu - x) * current - (k + mu) * previous
        ) / (k + 1)
    return current if current.ndim else float(current)


def confluent_hypergeometric_terms(n, b, x):
    """Terms of the terminating series F(-n, b; x), s = 0 .. n."""
    if n < 0 or int(n) != n:
        raise DomainError(f"F(-n, b; x) terminates only for integer n >= 0, got {n}")
    if not b > 0:
        raise DomainError(f"F(-n, b; x) requires b > 0, got b={b}")
    terms = [1.0]
    for s in range(1, int(n) + 1):
        terms.append(terms[-1] * (s - 1 - n) * x / ((b + s - 1) * s))
    return terms


def confluent_hypergeometric_polynomial(n, b, x):
    """F(-n, b; x) as a finite sum (Kummer function, terminating case)."""
    return math.fsum(confluent_hypergeometric_terms(n, b, x))


def edwards_gulyaev_asymptotic(nu, z):
    r"""
    One-term asymptotic form :math:`(2\pi z)^{-1/2}\exp[z - (\nu^2 - 1/4)/2z]`.
    """
    if not z > 0:
        raise DomainError(f"Edwards-Gulyaev form requires z > 0, got z={z}")
    return math.exp(z - (nu * nu - 0.25) / (2 * z)) / math.sqrt(2 * math.pi * z)
