"""
Admissibility of seeds.

A seed is admissible when every denominator a + b*x_n*x_{n-1} of its orbit is nonzero.
This depends on the seed only through alpha = b*x_{-1}*x_0: the step-n denominator
vanishes exactly when alpha equals the forbidden value

    f_n = -1/n                          (a = 1)
    f_n = a^n (a - 1) / (1 - a^n)       (a != 1, a^n != 1)

In Exact mode alpha = f_n is solved directly as a^n = alpha / (alpha + a - 1). In Float mode
the forbidden values, which approach L = 0 (|a| < 1) or L = 1 - a (|a| > 1) inside a
decreasing envelope, are compared one by one until they have passed alpha.
"""

import logging
import math
from fractions import Fraction
from typing import Optional

from .config import get_default_settings
from .errors import UnsupportedBranch
from .models import (
    AdmissibilityVerdict,
    Params,
    SeedPair,
    SingularKind,
    VerdictKind,
)
from .numerics import Mode, Scalar, alpha_of, mode_of, power

logger = logging.getLogger(__name__)


def forbidden_alpha(a: Scalar, n: int) -> Optional[Scalar]:
    """
    The alpha for which the step-n denominator vanishes.

    Args:
        a: Recurrence coefficient
        n: Step index, n >= 1

    Returns:
        f_n, or None when a^n = 1 (no forbidden value at that step)
    """
    if n < 1:
        raise ValueError(f"Step index must be at least 1, got {n}")

    if a == 1:
        return Fraction(-1, n) if mode_of(a) == Mode.EXACT else -1.0 / n

    if mode_of(a) == Mode.FLOAT and abs(a) > 1:
        return (a - 1) / (power(1 / a, n) - 1)

    a_n = power(a, n)
    if a_n == 1:
        return None
    return a_n * (a - 1) / (1 - a_n)


def forbidden_limit(a: Scalar) -> Scalar:
    """
    Limit of the forbidden values as n grows.

    Raises:
        UnsupportedBranch: For a in {-1, 0, 1}
    """
    if a in (-1, 0, 1):
        raise UnsupportedBranch(f"No limit of forbidden values for a = {a}")
    if abs(a) < 1:
        return a * 0
    return 1 - a


def _matches(f: Scalar, alpha: Scalar, tol: Optional[float]) -> bool:
    if tol is None:
        return f == alpha
    return abs(f - alpha) <= tol * max(abs(alpha), abs(f))


def _non_admissible(step: int) -> AdmissibilityVerdict:
    return AdmissibilityVerdict(VerdictKind.NON_ADMISSIBLE, step=step)


def _check_a_one(alpha: Scalar, n_cap: int, tol: Optional[float]) -> AdmissibilityVerdict:
    if alpha >= 0:
        return AdmissibilityVerdict(VerdictKind.ADMISSIBLE_REGULAR)

    if tol is None:
        if alpha.numerator == -1:
            return _non_admissible(alpha.denominator)
        return AdmissibilityVerdict(VerdictKind.ADMISSIBLE_REGULAR)

    index = -1 / alpha
    if index > n_cap:
        return AdmissibilityVerdict(VerdictKind.UNDECIDED, max_n_checked=n_cap)
    n = max(1, round(index))
    if _matches(-1.0 / n, alpha, tol):
        return _non_admissible(n)
    return AdmissibilityVerdict(VerdictKind.ADMISSIBLE_REGULAR)


def _log_abs(value: Fraction) -> float:
    # Logs of the ints, so tiny fractions do not underflow.
    return math.log(abs(value.numerator)) - math.log(value.denominator)


def _exact_forbidden_step(a: Fraction, alpha: Fraction) -> Optional[int]:
    """
    The step n with forbidden_alpha(a, n) == alpha, or None.

    For |a| != 1 and alpha != 1 - a, alpha = f_n holds exactly when a^n = alpha / (alpha + a - 1).
    A float logarithm proposes n and one exact power confirms it.
    """
    target = alpha / (alpha + a - 1)
    if target == 0 or abs(target) == 1:
        return None

    estimate = _log_abs(target) / _log_abs(a)
    if estimate < 0.5:
        return None

    # With a = p/q in lowest terms, a^n = p^n/q^n is reduced and one of them has more than n bits.
    size = max(target.numerator.bit_length(), target.denominator.bit_length())
    centre = round(estimate)
    for n in (centre - 1, centre, centre + 1):
        if 1 <= n <= size and power(a, n) == target:
            return n
    return None


def _scan(a: float, alpha: float, n_cap: int, tol: float) -> AdmissibilityVerdict:
    limit = forbidden_limit(a)
    gap = abs(alpha - limit)
    slack = tol * abs(alpha)
    abs_a = abs(a)
    spread = abs(1 - a)
    inverted = abs_a > 1

    factor = 1 / a if inverted else a
    a_n = abs_n = 1.0
    n = 0
    while True:
        n += 1
        a_n = a_n * factor
        abs_n = abs_n * abs_a

        if inverted:
            f = (a - 1) / (a_n - 1)
        else:
            f = a_n * (a - 1) / (1 - a_n)

        if _matches(f, alpha, tol):
            logger.debug("alpha=%s matches forbidden value f_%d for a=%s", alpha, n, a)
            return _non_admissible(n)

        if abs_a < 1:
            envelope = abs_n * spread / (1 - abs_n)
        else:
            envelope = spread / (abs_n - 1)

        if envelope < gap - slack:
            logger.debug("Forbidden values of a=%s cleared alpha=%s after %d terms", a, alpha, n)
            return AdmissibilityVerdict(VerdictKind.ADMISSIBLE_REGULAR, max_n_checked=n)

        if n >= n_cap:
            logger.warning("Admissibility undecided for a=%s alpha=%s after %d terms", a, alpha, n)
            return AdmissibilityVerdict(VerdictKind.UNDECIDED, max_n_checked=n_cap)


def check_admissible(
    params: Params,
    seed: SeedPair,
    n_cap: Optional[int] = None,
    float_tol: Optional[float] = None,
) -> AdmissibilityVerdict:
    """
    Decide whether a seed is admissible and whether it is regular.

    Exact mode always decides. Float mode compares against the forbidden values with a
    relative tolerance and may return Undecided after ``n_cap`` terms.

    Args:
        params: Recurrence coefficients
        seed: Initial values
        n_cap: Float-mode scan limit
        float_tol: Float-mode relative match tolerance

    Returns:
        AdmissibilityVerdict
    """
    settings = get_default_settings()
    n_cap = settings.n_cap if n_cap is None else n_cap
    float_tol = settings.float_tol if float_tol is None else float_tol

    alpha = alpha_of(params, seed)
    a = params.a
    tol = float_tol if params.mode == Mode.FLOAT else None

    if a == 0:
        if alpha == 0:
            return _non_admissible(1)
        if alpha == 1:
            return AdmissibilityVerdict(
                VerdictKind.ADMISSIBLE_SINGULAR, singular=SingularKind.ALPHA_ONE_MINUS_A
            )
        return AdmissibilityVerdict(VerdictKind.ADMISSIBLE_REGULAR)

    if alpha == 1 - a:
        return AdmissibilityVerdict(
            VerdictKind.ADMISSIBLE_SINGULAR, singular=SingularKind.ALPHA_ONE_MINUS_A
        )
    if alpha == 0:
        return AdmissibilityVerdict(VerdictKind.ADMISSIBLE_SINGULAR, singular=SingularKind.ALPHA_ZERO)

    if a == 1:
        return _check_a_one(alpha, n_cap, tol)

    if a == -1:
        if _matches(forbidden_alpha(a, 1), alpha, tol):
            return _non_admissible(1)
        return AdmissibilityVerdict(VerdictKind.ADMISSIBLE_REGULAR)

    if tol is None:
        step = _exact_forbidden_step(a, alpha)
        if step is not None:
            return _non_admissible(step)
        return AdmissibilityVerdict(VerdictKind.ADMISSIBLE_REGULAR)
    return _scan(a, alpha, n_cap, tol)
