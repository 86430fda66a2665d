"""
Riccati companion and the coefficient functions h(n), g(n).

With y_n = x_n * x_{n-1} the second-order recurrence collapses to the first-order
Riccati map y_{n+1} = y_n / (a + b*y_n), whose solution is known in closed form.
The ratios x_{n+1} / x_{n-1} are the coefficients h(n), and g(n) = 1 - h(n).

Everything here works in both arithmetic modes. The shared quantity is

    D(m) = a^m (1 - a) + alpha (1 - a^m) = a^m (1 - a - alpha) + alpha

so that h(n) = D(n) / D(n+1) for a != 1.
"""

import logging

from .errors import SingularDenominator, UnsupportedBranch
from .models import CoefficientQuery, Params, RiccatiOrbit
from .numerics import Scalar, common_mode, divide, power, Mode, mode_of

logger = logging.getLogger(__name__)


def riccati_step(y: Scalar, params: Params) -> Scalar:
    """
    One step of y_{n+1} = y_n / (a + b*y_n).

    Raises:
        SingularDenominator: If a + b*y = 0
    """
    common_mode(y, params.a)
    return divide(y, params.a + params.b * y)


def riccati_orbit(y0: Scalar, params: Params, n: int) -> RiccatiOrbit:
    """
    Iterate the Riccati map n times.

    Args:
        y0: Initial value y_0
        params: Recurrence coefficients
        n: Number of steps

    Returns:
        RiccatiOrbit holding y_0..y_n

    Raises:
        SingularDenominator: At the first vanishing denominator
    """
    terms = [y0]
    for _ in range(n):
        terms.append(riccati_step(terms[-1], params))
    return RiccatiOrbit(params=params, terms=tuple(terms))


def riccati_closed(y0: Scalar, params: Params, n: int) -> Scalar:
    """
    Closed-form y_n.

    For a = 1: y_n = y0 / (1 + b*y0*n).
    Otherwise: y_n = y0 (1 - a) / (a^n (1 - a) + b*y0 (1 - a^n)).

    Raises:
        SingularDenominator: If the closed-form denominator vanishes
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    common_mode(y0, params.a)
    a, b = params.a, params.b

    if a == 1:
        return divide(y0, 1 + b * y0 * n)

    a_n = power(a, n)
    return divide(y0 * (1 - a), a_n * (1 - a) + b * y0 * (1 - a_n))


def coefficient_denominator(a: Scalar, alpha: Scalar, m: int) -> Scalar:
    """
    D(m) = a^m (1 - a) + alpha (1 - a^m).

    For a = 1 this is the constant 0 and the a = 1 branch of h uses 1 + alpha*m instead.
    """
    return power(a, m) * (1 - a - alpha) + alpha


def _large_a(a: Scalar) -> bool:
    # Float mode with |a| > 1: a^n overflows long before the ratio does.
    return mode_of(a) == Mode.FLOAT and abs(a) > 1


def h_value(a: Scalar, alpha: Scalar, n: int) -> Scalar:
    """h(n) from raw arguments; see ``h_coeff``."""
    if a == 1:
        return divide(1 + alpha * n, 1 + alpha * (n + 1))

    if _large_a(a):
        r = power(1 / a, n + 1)
        c = 1 - a - alpha
        return divide(c / a + alpha * r, c + alpha * r)

    return divide(
        coefficient_denominator(a, alpha, n),
        coefficient_denominator(a, alpha, n + 1),
    )


def g_value(a: Scalar, alpha: Scalar, n: int) -> Scalar:
    """g(n) from raw arguments; see ``g_coeff``."""
    if a == 1:
        raise UnsupportedBranch("g(n) is defined for a != 1 only")

    c = a + alpha - 1
    if _large_a(a):
        r = power(1 / a, n + 1)
        return divide(c * (1 - a) / a, (1 - a - alpha) + alpha * r)

    return divide(c * (1 - a) * power(a, n), coefficient_denominator(a, alpha, n + 1))


def h_coeff(query: CoefficientQuery) -> Scalar:
    """
    Coefficient h(n) = x_{n+1} / x_{n-1} for a seed with invariant alpha.

    Args:
        query: Index n with a and alpha

    Returns:
        h(n) in the mode of a and alpha

    Raises:
        SingularDenominator: If the denominator vanishes (seed not admissible)
    """
    try:
        return h_value(query.a, query.alpha, query.n)
    except SingularDenominator:
        logger.debug("h(%d) singular for a=%s alpha=%s", query.n, query.a, query.alpha)
        raise


def g_coeff(query: CoefficientQuery) -> Scalar:
    """
    Coefficient g(n) = 1 - h(n) for a != 1.

    Raises:
        UnsupportedBranch: For a = 1
        SingularDenominator: If the denominator vanishes
    """
    return g_value(query.a, query.alpha, query.n)
