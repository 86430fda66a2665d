"""
Infinite products behind the limiting 2-periodic points.

For 0 < |a| < 1 and a regular seed, x_{2k+1} and x_{2k+2} converge to
p = x_{-1} * prod h(2i) and q = x_0 * prod h(2i+1). This module bounds the tails of
those products, certifies truncated limits, and provides two-sided bounds on the
partial products valid for every k.
"""

import logging
import math
import sys
from fractions import Fraction
from typing import Optional, Tuple

from .admissibility import check_admissible
from .config import get_default_settings
from .errors import NotInRange, NotRegular, OutOfHypothesis, TailNotYetGeometric
from .models import Params, PeriodicPoint, ProductBounds, SeedPair, SingularKind
from .numerics import Mode, Scalar, common_mode, power
from .riccati import coefficient_denominator, h_value

logger = logging.getLogger(__name__)

EPS = sys.float_info.epsilon
# Float factors with a larger relative error bound are recomputed exactly.
EXACT_FACTOR_LIMIT = 1e-9
# The tail bound is evaluated at the rounded alpha.
TAIL_MARGIN = 1e-6


def _require_contracting(a: Scalar) -> None:
    if a == 0 or abs(a) >= 1:
        raise NotInRange(f"Needs 0 < |a| < 1, got a = {a}")


def tail_bound(params: Params, alpha: Scalar, k_from: int) -> Scalar:
    """
    Bound B with |log prod_{i>=k_from} h(2i+j)| <= B for both parities j = 0, 1.

    The estimate uses |g(n)| <= C*|a|^n for n >= 2*k_from and |log(1 - g)| <= 2|g|
    when |g| <= 1/2, summed as a geometric series in a^2.

    Args:
        params: Recurrence coefficients, 0 < |a| < 1
        alpha: Seed invariant
        k_from: First product index of the tail, k_from >= 1

    Returns:
        B in the mode of the inputs (a rational bound in Exact mode)

    Raises:
        NotInRange: If |a| is not in (0, 1)
        TailNotYetGeometric: If g(n) cannot yet be bounded by 1/2 from 2*k_from on
    """
    if k_from < 1:
        raise ValueError(f"k_from must be positive, got {k_from}")
    a = params.a
    common_mode(a, alpha)
    _require_contracting(a)

    c = 1 - a - alpha
    if c == 0:
        return a * 0

    floor = abs(alpha) - power(abs(a), 2 * k_from + 1) * abs(c)
    if floor <= 0:
        raise TailNotYetGeometric(f"Denominator sign not yet settled at k = {k_from}")

    lead = abs(c) * abs(1 - a) / floor * power(abs(a), 2 * k_from)
    if 2 * lead > 1:
        raise TailNotYetGeometric(f"|g(n)| not yet below 1/2 at k = {k_from}")
    return 2 * lead / (1 - a * a)


def product_identity(a: Scalar, alpha: Scalar, k: int) -> Scalar:
    """prod_{i<=k} h(2i) * prod_{i<=k} h(2i+1) = (1 - a) / D(2k+2)."""
    return (1 - a) / coefficient_denominator(a, alpha, 2 * k + 2)


def product_bounds(a: Scalar, alpha: Scalar) -> ProductBounds:
    """
    Closed-form bounds on the odd and even partial products.

    Valid for every k when 0 < |a| < 1 and alpha > (1 - a)/2. The lower bounds pair the
    product identity with the opposite parity's upper bound.

    Raises:
        OutOfHypothesis: Outside 0 < |a| < 1, alpha > (1 - a)/2
    """
    if a == 0 or abs(a) >= 1:
        raise OutOfHypothesis(f"Needs 0 < |a| < 1, got a = {a}")
    if not alpha > (1 - a) / 2:
        raise OutOfHypothesis(f"Needs alpha > (1 - a)/2, got alpha = {alpha}, a = {a}")

    a, alpha = float(a), float(alpha)
    c = 1 - a - alpha
    odd_exponent = 2 * abs(c * a) / (1 - a * a)
    # For a > 0 the denominators are at least min(alpha, 1 - a), so no 1/(1+a) factor.
    even_exponent = 2 * abs(c) / ((1 - a * a) * min(1.0, 1 + a))
    floor = min(1.0, (1 - a) / alpha)

    return ProductBounds(
        odd_lower=floor * math.exp(-even_exponent),
        odd_upper=math.exp(odd_exponent),
        even_lower=floor * math.exp(-odd_exponent),
        even_upper=math.exp(even_exponent),
    )


def _snap_to_equilibrium(a: float, b: float, p: float, q: float, err: float) -> Optional[float]:
    if b == 0 or (1 - a) / b <= 0 or p * q <= 0:
        return None
    root = math.copysign(math.sqrt((1 - a) / b), p)
    if abs(p - q) <= 2 * err and abs(p - root) <= 2 * err:
        return root
    return None


def _denominator_slack(a: float, alpha: float, n: int, rounded_a: bool) -> float:
    """Bound on the rounding error of D(n) = a^n (1 - a - alpha) + alpha evaluated in float."""
    # A rounded a perturbs a^n by up to n/2 ulps.
    reach = n + 8 if rounded_a else 8
    return EPS * (reach * abs(a) ** n * (1 + abs(a) + 2 * abs(alpha)) + 4 * abs(alpha))


def _factor(
    a: float,
    alpha: float,
    exact_a: Fraction,
    exact_alpha: Fraction,
    n: int,
    rounded_a: bool,
) -> Tuple[float, float]:
    """
    h(n) in float with a bound on |log(computed / true)|.

    Near a forbidden alpha, D(n) cancels and the float quotient loses its digits; such
    factors are evaluated in rational arithmetic and rounded once.
    """
    d_now = coefficient_denominator(a, alpha, n)
    d_next = coefficient_denominator(a, alpha, n + 1)
    rho = math.inf
    if d_now != 0 and d_next != 0:
        rho = (
            _denominator_slack(a, alpha, n, rounded_a) / abs(d_now)
            + _denominator_slack(a, alpha, n + 1, rounded_a) / abs(d_next)
        )
    if rho <= EXACT_FACTOR_LIMIT:
        return d_now / d_next, 2 * rho + 2 * EPS
    logger.debug("h(%d) ill-conditioned (rho=%.3g), evaluating exactly", n, rho)
    return float(h_value(exact_a, exact_alpha, n)), EPS


def limit_periodic_point(
    params: Params,
    seed: SeedPair,
    tol: Optional[float] = None,
    k_cap: Optional[int] = None,
) -> PeriodicPoint:
    """
    Certified limit (p, q) of the even and odd subsequences for 0 < |a| < 1.

    The products are truncated at the first K where the tail bound is below tol/2, the
    last factors are within tol/4 of 1 and the combined error is within tol. The error
    bound covers truncation, rounding of the inputs and of every factor. When k_cap is
    reached first, the tightest certificate found so far is returned with a warning.

    Args:
        params: Recurrence coefficients, 0 < |a| < 1
        seed: Admissible seed with alpha != 0
        tol: Target error
        k_cap: Largest truncation index tried

    Returns:
        PeriodicPoint with p = lim x_{2k+1}, q = lim x_{2k}

    Raises:
        NotInRange: If |a| is not in (0, 1)
        NotAdmissible: If the seed is not admissible
        NotRegular: If alpha = 0
        TailNotYetGeometric: If no tail bound below 1 is reached by k_cap
    """
    settings = get_default_settings()
    tol = settings.limit_tol if tol is None else tol
    k_cap = settings.k_cap if k_cap is None else k_cap

    _require_contracting(params.a)
    verdict = check_admissible(params, seed)
    verdict.require_admissible()
    if verdict.singular == SingularKind.ALPHA_ZERO:
        raise NotRegular("alpha = 0: the orbit grows geometrically, no periodic limit")
    if verdict.singular == SingularKind.ALPHA_ONE_MINUS_A:
        p, q = seed.x_prev, seed.x_zero
        return PeriodicPoint(p=p, q=q, period=1 if p == q else 2, error_bound=0.0)

    rounded_a = params.mode == Mode.EXACT
    exact_a = Fraction(params.a)
    exact_alpha = Fraction(params.b) * Fraction(seed.x_prev) * Fraction(seed.x_zero)
    float_params = params.to_float() if rounded_a else params
    a, b = float_params.a, float_params.b
    alpha = float(exact_alpha)
    x_prev, x_zero = float(seed.x_prev), float(seed.x_zero)

    seed_drift = EPS if rounded_a else 0.0
    even = odd = 1.0
    even_drift = odd_drift = seed_drift
    best = None
    for k in range(k_cap + 1):
        h_even, drift = _factor(a, alpha, exact_a, exact_alpha, 2 * k, rounded_a)
        even *= h_even
        even_drift += drift + EPS
        h_odd, drift = _factor(a, alpha, exact_a, exact_alpha, 2 * k + 1, rounded_a)
        odd *= h_odd
        odd_drift += drift + EPS

        try:
            tail = tail_bound(float_params, alpha, k + 1) * (1 + TAIL_MARGIN)
        except TailNotYetGeometric:
            continue
        if tail > 1:
            continue

        p, q = x_prev * even, x_zero * odd
        err_p = abs(p) * math.expm1(tail + even_drift)
        err_q = abs(q) * math.expm1(tail + odd_drift)
        err_pq = abs(p) * err_q + abs(q) * err_p + err_p * err_q + EPS * abs(p * q)
        err = max(err_p, err_q, err_pq, abs(b) * err_pq)
        if best is None or err < best[0]:
            best = (err, p, q, tail, k + 1)

        settled = max(abs(h_even - 1), abs(h_odd - 1)) < tol / 4
        if tail < tol / 2 and settled and err <= tol:
            break
        if tail < EPS * 1e-2 and settled:
            logger.warning("Limit for %s stops at rounding floor %.3g > tol %.3g", params, best[0], tol)
            break
    else:
        if best is None:
            raise TailNotYetGeometric(f"No usable tail bound within k_cap = {k_cap}")
        logger.warning(
            "Limit for %s reached k_cap = %d with error %.3g > tol %.3g", params, k_cap, best[0], tol
        )

    err, p, q, tail, k_used = best
    logger.debug("Limit for %s certified at K=%d, tail=%.3g, err=%.3g", params, k_used, tail, err)

    root = _snap_to_equilibrium(a, b, p, q, err)
    if root is not None:
        return PeriodicPoint(p=root, q=root, period=1, error_bound=3 * err, tail_bound=tail, k_used=k_used)
    return PeriodicPoint(p=p, q=q, period=2, error_bound=err, tail_bound=tail, k_used=k_used)
