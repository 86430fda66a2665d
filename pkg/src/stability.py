"""
Equilibria, Jacobians and stability verdicts.

The recurrence is the planar map F(x, y) = (y, x / (a + b*x*y)). Equilibria are
fixed points of F; 2-periodic points are fixed points of F o F, which for a != 0 are
exactly the points with a + b*x*y = 1. At such a point the Jacobian of F o F has
trace 1 + a^2 and determinant a^2, hence eigenvalues a^2 and 1.
"""

import logging
import math
from multiprocessing import Pool
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .config import get_default_settings
from .errors import NotPeriodicPoint
from .models import (
    Params,
    PeriodicPoint,
    ProbeReport,
    ProbeRow,
    SeedPair,
    StabilityKind,
    StabilityTarget,
    StabilityVerdict,
)
from .numerics import Scalar, exact_sqrt
from .orbit import iterate

logger = logging.getLogger(__name__)


def equilibria(params: Params) -> List[PeriodicPoint]:
    """
    Fixed points (x, x) of the map.

    Zero is always an equilibrium; x = +-sqrt((1 - a)/b) exist when (1 - a)*b > 0.
    Exact mode returns rational roots when they exist, otherwise floats with an
    error bound of one unit in the last place.
    """
    zero = params.a * 0
    points = [PeriodicPoint(p=zero, q=zero, period=1, error_bound=0.0)]

    a, b = params.a, params.b
    if (1 - a) * b > 0:
        root = exact_sqrt((1 - a) / b)
        error = 0.0
        if root is None:
            root = math.sqrt(float((1 - a) / b))
            error = math.ulp(root)
        points.append(PeriodicPoint(p=root, q=root, period=1, error_bound=error))
        points.append(PeriodicPoint(p=-root, q=-root, period=1, error_bound=error))
    return points


def _require_periodic_point(params: Params, p: float, q: float, tol: float) -> None:
    a, b = float(params.a), float(params.b)
    if a == 0:
        raise NotPeriodicPoint("a = 0: every admissible point is 2-periodic, no isolated test")
    product = b * p * q
    if abs(a + product - 1) > tol * max(1.0, abs(a), abs(product)):
        raise NotPeriodicPoint(f"a + b*p*q = {a + product} differs from 1 at ({p}, {q})")


def second_iterate(params: Params, x: float, y: float) -> Tuple[float, float]:
    """F o F applied to (x, y) in floating point."""
    a, b = float(params.a), float(params.b)
    u = a + b * x * y
    y1 = x / u
    return y1, y / (a + b * y * y1)


def period2_jacobian(params: Params, p: float, q: float) -> np.ndarray:
    """Analytic Jacobian of F o F at (p, q)."""
    a, b = float(params.a), float(params.b)
    w = b * p * q
    u = a + w
    v = a * a + (a + 1) * w
    return np.array([
        [a / u**2, -b * p * p / u**2],
        [-a * b * q * q / v**2, (u * v - a * w) / v**2],
    ])


def finite_difference_jacobian(
    params: Params, p: float, q: float, step: float = 1e-6
) -> np.ndarray:
    """Central-difference Jacobian of F o F at (p, q)."""
    jac = np.zeros((2, 2))
    for col, (dx, dy) in enumerate(((step, 0.0), (0.0, step))):
        plus = second_iterate(params, p + dx, q + dy)
        minus = second_iterate(params, p - dx, q - dy)
        jac[:, col] = (np.array(plus) - np.array(minus)) / (2 * step)
    return jac


def _sorted_eigenvalues(matrix: np.ndarray) -> Tuple[complex, complex]:
    values = np.linalg.eigvals(matrix)
    values = sorted(values, key=lambda z: (z.real, z.imag))
    return tuple(complex(z).real if abs(complex(z).imag) < 1e-12 else complex(z) for z in values)


def period2_jacobian_eigs(
    params: Params, p: Scalar, q: Scalar, tol: Optional[float] = None
) -> Tuple[complex, complex]:
    """
    Eigenvalues of the linearization of F o F at a 2-periodic point.

    Args:
        params: Recurrence coefficients, a != 0
        p, q: Point with a + b*p*q = 1 (within tol)
        tol: Relative tolerance on the periodic-point equation

    Returns:
        Eigenvalues sorted by real part; they equal {a^2, 1}

    Raises:
        NotPeriodicPoint: If a = 0 or a + b*p*q != 1
    """
    tol = get_default_settings().eig_tol if tol is None else tol
    p, q = float(p), float(q)
    _require_periodic_point(params, p, q, tol)
    return _sorted_eigenvalues(period2_jacobian(params, p, q))


def equilibrium_jacobian_eigs(params: Params, x: Scalar) -> Tuple[complex, complex]:
    """
    Eigenvalues of DF at a nonzero equilibrium (x, x); they equal {-1, a}.

    Raises:
        NotPeriodicPoint: If (x, x) is not a nonzero equilibrium
    """
    a, b, x = float(params.a), float(params.b), float(x)
    if x == 0:
        raise NotPeriodicPoint("Zero is handled by zero_stability")
    _require_periodic_point(params, x, x, get_default_settings().eig_tol)
    u = a + b * x * x
    jac = np.array([[0.0, 1.0], [a / u**2, -b * x * x / u**2]])
    return _sorted_eigenvalues(jac)


def zero_stability(params: Params) -> StabilityVerdict:
    """
    Stability of the zero solution.

    Asymptotically stable for |a| > 1 and for a = 1 with b != 0; stable but not
    asymptotically for (a, b) = (1, 0); unstable for |a| < 1 and a = -1.
    """
    a, b = params.a, params.b
    target = StabilityTarget.ZERO

    if a == 0:
        return StabilityVerdict(
            target, StabilityKind.UNSTABLE,
            note="a = 0: x_{n+1} = 1/(b*x_n), orbits near zero are large",
        )
    if abs(a) > 1:
        return StabilityVerdict(target, StabilityKind.ASYMPTOTICALLY_STABLE,
                                note="characteristic roots +-1/sqrt(a) inside the unit circle")
    if a == 1:
        if b == 0:
            return StabilityVerdict(target, StabilityKind.STABLE_NOT_ASYMPTOTICALLY,
                                    note="every orbit is constant 2-periodic")
        return StabilityVerdict(target, StabilityKind.ASYMPTOTICALLY_STABLE,
                                note="linearization neutral, decay like 1/sqrt(n)")
    if a == -1:
        return StabilityVerdict(target, StabilityKind.UNSTABLE,
                                note="orbits near zero are 4-periodic or unbounded")
    return StabilityVerdict(target, StabilityKind.UNSTABLE,
                            note="characteristic roots +-1/sqrt(a) outside the unit circle")


def periodic_stability(params: Params, p: Scalar, q: Scalar) -> StabilityVerdict:
    """
    Analytic stability of a nonzero 2-periodic point.

    Stable but not asymptotically for 0 < |a| < 1 (neighbouring orbits converge to
    nearby periodic points), unstable for |a| >= 1.

    Raises:
        NotPeriodicPoint: If a = 0 or a + b*p*q != 1
    """
    eigenvalues = period2_jacobian_eigs(params, p, q)
    a = params.a
    target = StabilityTarget.NONZERO_PERIODIC
    if abs(a) < 1:
        return StabilityVerdict(target, StabilityKind.STABLE_NOT_ASYMPTOTICALLY, eigenvalues,
                                note="one neutral direction along the curve a + b*x*y = 1")
    return StabilityVerdict(target, StabilityKind.UNSTABLE, eigenvalues,
                            note="nearby orbits converge to zero or diverge")


def _probe_delta(args) -> ProbeRow:
    a, b, p, q, delta, n_max = args
    orbit = iterate(Params(a, b), SeedPair(p + delta, q + delta), n_max)
    distances = [abs(x - (p if n % 2 else q)) for n, x in orbit.indexed()]
    return ProbeRow(
        delta=delta,
        sup_distance=max(distances),
        final_distance=max(distances[-2:]),
        termination=orbit.termination.label,
    )


def periodic_stability_probe(
    params: Params,
    p: float,
    q: float,
    deltas: Optional[Sequence[float]] = None,
    n_max: Optional[int] = None,
    workers: int = 1,
) -> ProbeReport:
    """
    Empirical stability evidence: perturb (p, q) by delta and track the orbit.

    Args:
        params: Recurrence coefficients, 0 < |a| < 1
        p, q: 2-periodic point
        deltas: Perturbations applied to both coordinates
        n_max: Orbit length per perturbation
        workers: Process count; rows keep the order of ``deltas``

    Returns:
        ProbeReport, always labelled empirical

    Raises:
        NotPeriodicPoint: Outside 0 < |a| < 1 or if a + b*p*q != 1
    """
    settings = get_default_settings()
    deltas = settings.probe_deltas if deltas is None else list(deltas)
    n_max = settings.probe_n_max if n_max is None else n_max

    a, b = float(params.a), float(params.b)
    if not 0 < abs(a) < 1:
        raise NotPeriodicPoint(f"Probe needs 0 < |a| < 1, got a = {a}")
    _require_periodic_point(params, float(p), float(q), settings.eig_tol)

    jobs = [(a, b, float(p), float(q), float(d), n_max) for d in deltas]
    if workers > 1:
        with Pool(workers) as pool:
            rows = pool.map(_probe_delta, jobs)
    else:
        rows = [_probe_delta(job) for job in jobs]

    by_size = sorted(rows, key=lambda row: abs(row.delta), reverse=True)
    shrinks = all(
        later.sup_distance <= earlier.sup_distance * (1 + 1e-9) + 1e-15
        for earlier, later in zip(by_size, by_size[1:])
    )
    logger.debug("Probe at (%s, %s): %d deltas, shrinks=%s", p, q, len(rows), shrinks)
    return ProbeReport(rows=tuple(rows), shrinks_with_delta=shrinks)
