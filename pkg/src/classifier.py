"""
Asymptotic classification of orbits.

The behavior of an admissible orbit is decided by the region of a and by the seed
invariant alpha = b*x_{-1}*x_0:

    a = -1        six cases on alpha (two periodic, four unbounded)
    |a| >= 1      convergence to zero, or exact 2-periodicity when alpha = 1 - a
    a = 0         2-periodic from x_1 on
    0 < |a| < 1   convergence to a 2-periodic orbit (p, q) with p*q = (1 - a)/b,
                  except alpha = 0 (geometric growth) and alpha = 1 - a (exactly periodic)
"""

import logging
import math
from typing import Optional, Tuple

from .admissibility import check_admissible
from .config import get_default_settings
from .errors import NotInRange, NotPeriodicPoint, NotRegular, TailNotYetGeometric
from .limits import limit_periodic_point
from .models import (
    Behavior,
    BehaviorKind,
    ClassificationResult,
    DivergentBranch,
    Params,
    SeedPair,
)
from .numerics import Scalar, alpha_of, divide, exact_sqrt, sign
from .riccati import coefficient_denominator
from .stability import periodic_stability, zero_stability

logger = logging.getLogger(__name__)


def _classify_minus_one(alpha: Scalar, seed: SeedPair) -> Behavior:
    x_prev, x_zero = seed.x_prev, seed.x_zero
    s_prev, s_zero = sign(x_prev), sign(x_zero)

    if alpha == 2:
        return Behavior(BehaviorKind.EXACTLY_TWO_PERIODIC, p=x_prev, q=x_zero)
    if alpha == 0:
        return Behavior(BehaviorKind.FOUR_PERIODIC, cycle=(-x_prev, -x_zero, x_prev, x_zero))
    if alpha > 2:
        return Behavior(
            BehaviorKind.UNBOUNDED_EVEN_DIVERGES_ODD_TO_ZERO,
            divergent=(DivergentBranch(2, 0, s_zero),),
            vanishing=((2, 1),),
        )
    if alpha > 1:
        return Behavior(
            BehaviorKind.UNBOUNDED_ODD_DIVERGES_EVEN_TO_ZERO,
            divergent=(DivergentBranch(2, 1, s_prev),),
            vanishing=((2, 0),),
        )
    if alpha > 0:
        return Behavior(
            BehaviorKind.UNBOUNDED_ALTERNATING,
            divergent=(DivergentBranch(4, 1, -s_prev), DivergentBranch(4, 3, s_prev)),
            vanishing=((2, 0),),
        )
    return Behavior(
        BehaviorKind.UNBOUNDED_ALTERNATING,
        divergent=(DivergentBranch(4, 0, s_zero), DivergentBranch(4, 2, -s_zero)),
        vanishing=((2, 1),),
    )


def _classify_geometric(a: Scalar, seed: SeedPair) -> Behavior:
    # alpha = 0: x_{2k} = x_0 / a^k and x_{2k-1} = x_{-1} / a^k.
    divergent = []
    vanishing = []
    s_prev, s_zero = sign(seed.x_prev), sign(seed.x_zero)

    if s_zero == 0:
        vanishing.append((2, 0))
    elif a > 0:
        divergent.append(DivergentBranch(2, 0, s_zero))
    else:
        divergent.extend([DivergentBranch(4, 0, s_zero), DivergentBranch(4, 2, -s_zero)])

    if s_prev == 0:
        vanishing.append((2, 1))
    elif a > 0:
        divergent.append(DivergentBranch(2, 1, s_prev))
    else:
        divergent.extend([DivergentBranch(4, 1, -s_prev), DivergentBranch(4, 3, s_prev)])

    return Behavior(
        BehaviorKind.UNBOUNDED_GEOMETRIC,
        divergent=tuple(sorted(divergent, key=lambda d: (d.modulus, d.residue))),
        vanishing=tuple(vanishing),
    )


def monotonicity_index(a: Scalar, alpha: Scalar, scan_cap: Optional[int] = None) -> Optional[int]:
    """
    Index K from which x_{2k-1} and x_{2k} are both monotone in k.

    Beyond the point where D(m) = a^m (1 - a - alpha) + alpha keeps the sign of alpha,
    every h(n) is positive and g(n) keeps one sign per parity. That point is found by a
    rigorous forward bound (|a|^m |1 - a - alpha| < |alpha|) and a backward scan.

    Args:
        a: Coefficient with 0 < |a| < 1
        alpha: Seed invariant, nonzero
        scan_cap: Give up (returning None) beyond this many terms

    Raises:
        NotInRange: If |a| is not in (0, 1)
        NotRegular: If alpha = 0
    """
    if a == 0 or abs(a) >= 1:
        raise NotInRange(f"Needs 0 < |a| < 1, got a = {a}")
    if alpha == 0:
        raise NotRegular("alpha = 0 has no settled coefficient sign")
    scan_cap = get_default_settings().scan_cap if scan_cap is None else scan_cap

    spread = abs(1 - a - alpha)
    if spread == 0:
        return 0

    target = sign(alpha)
    settled = 0
    level = spread
    while level >= abs(alpha):
        settled += 1
        level = level * abs(a)
        if settled > scan_cap:
            logger.warning("Monotonicity scan for a=%s alpha=%s passed cap %d", a, alpha, scan_cap)
            return None

    while settled > 0 and sign(coefficient_denominator(a, alpha, settled - 1)) == target:
        settled -= 1
    return (settled + 1) // 2


def classify(params: Params, seed: SeedPair, tol: Optional[float] = None) -> Behavior:
    """
    Classify the asymptotic behavior of the orbit of ``seed``.

    Args:
        params: Recurrence coefficients
        seed: Initial values
        tol: Error target for limiting 2-periodic points

    Returns:
        Behavior; NotAdmissible(step) for forbidden seeds
    """
    verdict = check_admissible(params, seed)
    if not verdict.is_admissible:
        return Behavior(BehaviorKind.NOT_ADMISSIBLE, step=verdict.step)

    a, b = params.a, params.b
    alpha = alpha_of(params, seed)

    if seed.is_zero:
        return Behavior(BehaviorKind.TRIVIALLY_ZERO)

    if a == 0:
        return Behavior(
            BehaviorKind.EXACTLY_TWO_PERIODIC,
            p=divide(1, b * seed.x_zero),
            q=seed.x_zero,
            start_index=1,
        )

    if a == -1:
        return _classify_minus_one(alpha, seed)

    if alpha == 1 - a:
        return Behavior(BehaviorKind.EXACTLY_TWO_PERIODIC, p=seed.x_prev, q=seed.x_zero)

    if abs(a) >= 1:
        return Behavior(BehaviorKind.CONVERGES_TO_ZERO)

    if alpha == 0:
        return _classify_geometric(a, seed)

    try:
        point = limit_periodic_point(params, seed, tol=tol)
    except TailNotYetGeometric as e:
        logger.warning("No certified limit for %s, seed %s: %s", params, seed, e)
        return Behavior(
            BehaviorKind.CONVERGES_TO_TWO_PERIODIC,
            monotone_from=monotonicity_index(a, alpha),
        )
    return Behavior(
        BehaviorKind.CONVERGES_TO_TWO_PERIODIC,
        p=point.p,
        q=point.q,
        error=point.error_bound,
        tail_bound=point.tail_bound,
        monotone_from=monotonicity_index(a, alpha),
    )


def singular_bifurcation_point(b: Scalar, seed: SeedPair) -> Tuple[Scalar, bool]:
    """
    The a at which a fixed seed becomes exactly 2-periodic: a* = 1 - b*x_{-1}*x_0.

    Returns:
        (a*, isolated) where isolated means |a*| > 1, so nearby a give convergence to zero
    """
    alpha = b * seed.x_prev * seed.x_zero
    a_star = 1 - alpha
    return a_star, abs(a_star) > 1


def normalize_scale(params: Params, seed: SeedPair) -> Tuple[Params, SeedPair]:
    """
    Rescale v_n = sqrt(|b|) * x_n so that b becomes sign(b) in {-1, 0, 1}.

    alpha is preserved. Exact inputs stay exact when |b| is a rational square and
    switch to Float mode otherwise.
    """
    b = params.b
    if b == 0:
        return params, seed

    root = exact_sqrt(abs(b))
    if root is None:
        logger.debug("sqrt(|b|) irrational for b=%s, normalizing in Float mode", b)
        params, seed = params.to_float(), seed.to_float()
        root = math.sqrt(abs(params.b))

    unit = params.b * 0 + sign(params.b)
    return (
        Params(params.a, unit),
        SeedPair(root * seed.x_prev, root * seed.x_zero),
    )


def analyze(params: Params, seed: SeedPair, tol: Optional[float] = None) -> ClassificationResult:
    """
    Classify a seed and attach the certificates that support the verdict.

    For 2-periodic behaviors the product p*q is reported next to (1 - a)/b, together
    with the analytic stability of (p, q); the zero solution's stability is always given.
    """
    verdict = check_admissible(params, seed)
    behavior = classify(params, seed, tol=tol)
    result = ClassificationResult(
        params=params,
        seed=seed,
        alpha=alpha_of(params, seed),
        verdict=verdict,
        behavior=behavior,
    )
    if not verdict.is_admissible:
        return result

    result.zero_stability = zero_stability(params)

    periodic = (BehaviorKind.EXACTLY_TWO_PERIODIC, BehaviorKind.CONVERGES_TO_TWO_PERIODIC)
    if behavior.kind in periodic and behavior.p is not None and params.b != 0:
        result.pq_product = behavior.p * behavior.q
        result.pq_target = (1 - params.a) / params.b
        try:
            result.periodic_stability = periodic_stability(params, behavior.p, behavior.q)
        except NotPeriodicPoint as e:
            logger.debug("No periodic stability for %s: %s", params, e)
    return result
