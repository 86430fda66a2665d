"""
Orbit computation for x_{n+1} = x_{n-1} / (a + b*x_n*x_{n-1}).

Direct iteration stops cleanly at the first singular or non-finite step. The closed
form writes every term as a seed value times a running product of h coefficients:

    x_{2k+1} = x_{-1} * prod_{i=0..k} h(2i)
    x_{2k+2} = x_0    * prod_{i=0..k} h(2i+1)
"""

import logging
import math
from typing import List, Optional, Tuple

from .admissibility import check_admissible
from .config import get_default_settings
from .errors import ResourceLimitExceeded
from .models import (
    Orbit,
    Params,
    PartialProducts,
    SeedPair,
    Termination,
    TerminationKind,
    VerdictKind,
)
from .numerics import Mode, Scalar, alpha_of, bit_size
from .riccati import h_value

logger = logging.getLogger(__name__)


def iterate(
    params: Params,
    seed: SeedPair,
    n_max: int,
    max_bits: Optional[int] = None,
    ill_conditioned_ratio: Optional[float] = None,
) -> Orbit:
    """
    Iterate the recurrence directly.

    Args:
        params: Recurrence coefficients
        seed: Initial values (x_{-1}, x_0)
        n_max: Last index to compute
        max_bits: Exact-mode cap on numerator plus denominator bits
        ill_conditioned_ratio: Float-mode threshold |den| / (|a| + |b*x_n*x_{n-1}|)
            below which a step is flagged ill-conditioned

    Returns:
        Orbit ending with Completed, SingularAt(m) or NonFiniteAt(m)

    Raises:
        MixedModeError: If params and seed modes differ
        ResourceLimitExceeded: If an exact term outgrows max_bits
    """
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    alpha_of(params, seed)

    settings = get_default_settings()
    if max_bits is None:
        max_bits = settings.max_bits
    if ill_conditioned_ratio is None:
        ill_conditioned_ratio = settings.ill_conditioned_ratio

    a, b = params.a, params.b
    exact = params.mode == Mode.EXACT
    terms: List[Scalar] = [seed.x_prev, seed.x_zero]
    flagged: List[int] = []
    termination = Termination(TerminationKind.COMPLETED)

    for m in range(1, n_max + 1):
        older, newer = terms[-2], terms[-1]
        product = b * newer * older
        den = a + product

        if den == 0:
            termination = Termination(TerminationKind.SINGULAR, m)
            break

        if exact:
            value = older / den
            if bit_size(value) > max_bits:
                raise ResourceLimitExceeded(
                    f"x_{m} needs {bit_size(value)} bits, cap is {max_bits}"
                )
        else:
            if not math.isfinite(den):
                termination = Termination(TerminationKind.NON_FINITE, m)
                break
            value = older / den
            if not math.isfinite(value):
                termination = Termination(TerminationKind.NON_FINITE, m)
                break
            if abs(den) < ill_conditioned_ratio * (abs(a) + abs(product)):
                flagged.append(m)

        terms.append(value)

    if termination.kind != TerminationKind.COMPLETED:
        logger.debug("Orbit for %s stopped: %s", params, termination.label)

    return Orbit(
        params=params,
        seed=seed,
        terms=tuple(terms),
        termination=termination,
        ill_conditioned=tuple(flagged),
    )


def coefficient_products(a: Scalar, alpha: Scalar, k_max: int) -> PartialProducts:
    """
    Running products P_k = prod_{i<=k} h(2i) and Q_k = prod_{i<=k} h(2i+1).

    Raises:
        SingularDenominator: If some h(n) with n <= 2*k_max + 1 is undefined
    """
    if k_max < 0:
        raise ValueError(f"k_max must be non-negative, got {k_max}")
    evens: List[Scalar] = []
    odds: List[Scalar] = []
    p = q = None
    for i in range(k_max + 1):
        h_even = h_value(a, alpha, 2 * i)
        h_odd = h_value(a, alpha, 2 * i + 1)
        p = h_even if p is None else p * h_even
        q = h_odd if q is None else q * h_odd
        evens.append(p)
        odds.append(q)
    return PartialProducts(even_products=tuple(evens), odd_products=tuple(odds))


def _require_admissible(params: Params, seed: SeedPair) -> Scalar:
    alpha = alpha_of(params, seed)
    verdict = check_admissible(params, seed)
    verdict.require_admissible()
    if verdict.kind == VerdictKind.UNDECIDED:
        logger.warning("Admissibility undecided for %s; evaluating closed form anyway", params)
    return alpha


def partial_products(params: Params, seed: SeedPair, k_max: int) -> PartialProducts:
    """
    Partial products of the closed form for an admissible seed.

    Raises:
        NotAdmissible: If the seed is not admissible
    """
    alpha = _require_admissible(params, seed)
    return coefficient_products(params.a, alpha, k_max)


def closed_form_orbit(params: Params, seed: SeedPair, n_max: int) -> Tuple[Scalar, ...]:
    """
    Terms x_{-1}..x_{n_max} evaluated through the closed form.

    Raises:
        NotAdmissible: If the seed is not admissible
    """
    if n_max < -1:
        raise ValueError(f"n_max must be at least -1, got {n_max}")
    alpha = _require_admissible(params, seed)
    terms: List[Scalar] = [seed.x_prev, seed.x_zero][: n_max + 2]
    if n_max < 1:
        return tuple(terms)

    products = coefficient_products(params.a, alpha, (n_max - 1) // 2)
    for n in range(1, n_max + 1):
        k = (n - 1) // 2
        if n % 2 == 1:
            terms.append(seed.x_prev * products.even_products[k])
        else:
            terms.append(seed.x_zero * products.odd_products[k])
    return tuple(terms)


def closed_form_term(params: Params, seed: SeedPair, n: int) -> Scalar:
    """
    Single term x_n from the closed form.

    Args:
        params: Recurrence coefficients
        seed: Admissible seed
        n: Index, n >= -1

    Returns:
        x_n, equal to the n-th term of ``iterate`` (exactly in Exact mode)

    Raises:
        NotAdmissible: If the seed is not admissible
    """
    if n < -1:
        raise ValueError(f"n must be at least -1, got {n}")
    return closed_form_orbit(params, seed, n)[n + 1]


def even_odd_split(orbit: Orbit) -> Tuple[Tuple[Scalar, ...], Tuple[Scalar, ...]]:
    """
    Split an orbit into (x_0, x_2, ...) and (x_{-1}, x_1, ...).

    Returns:
        Tuple of (even-indexed terms, odd-indexed terms)
    """
    return orbit.terms[1::2], orbit.terms[0::2]
