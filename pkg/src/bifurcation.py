"""
Bifurcation sweeps over the coefficient a.

For each grid value of a the orbit of a fixed seed is iterated in Float mode and the
terms from ``keep_from`` to ``iters`` are retained. Columns are independent, so they
can be computed by a process pool; results are always returned in grid order.
"""

import logging
import math
from fractions import Fraction
from multiprocessing import Pool
from typing import List, Tuple

from .errors import DegenerateParams
from .models import (
    BifurcationSample,
    Params,
    SampleFlag,
    SeedPair,
    SweepConfig,
    TerminationKind,
)
from .orbit import iterate

logger = logging.getLogger(__name__)


def _decimal(value: float) -> Fraction:
    # Shortest repr round-trips, so "0.005" is read as 1/200, not its binary neighbour.
    return Fraction(repr(float(value)))


def grid_values(cfg: SweepConfig) -> List[float]:
    """
    Grid a_k = a_min + k*step for k = 0..floor((a_max - a_min)/step).

    Each point is computed in exact rational arithmetic from the decimal values and
    rounded once, so no error accumulates along the grid.
    """
    a_min, a_max, step = _decimal(cfg.a_min), _decimal(cfg.a_max), _decimal(cfg.step)
    count = math.floor((a_max - a_min) / step) + 1
    return [float(a_min + k * step) for k in range(count)]


def _sweep_column(job: Tuple[float, SweepConfig]) -> List[BifurcationSample]:
    a, cfg = job
    try:
        params = Params(a, float(cfg.b))
    except DegenerateParams:
        return [BifurcationSample(a=a, n=1, x=None, flag=SampleFlag.SINGULAR)]

    seed = SeedPair(float(cfg.seed[0]), float(cfg.seed[1]))
    orbit = iterate(params, seed, cfg.iters)

    samples = [
        BifurcationSample(a=a, n=n, x=x)
        for n, x in orbit.indexed()
        if n >= cfg.keep_from
    ]
    termination = orbit.termination
    if termination.kind != TerminationKind.COMPLETED:
        flag = (
            SampleFlag.SINGULAR
            if termination.kind == TerminationKind.SINGULAR
            else SampleFlag.NON_FINITE
        )
        logger.debug("Column a=%r stopped: %s", a, termination.label)
        samples.append(BifurcationSample(a=a, n=termination.step, x=None, flag=flag))
    return samples


def sweep(cfg: SweepConfig, workers: int = 1) -> List[BifurcationSample]:
    """
    Run a bifurcation sweep.

    Args:
        cfg: Sweep configuration
        workers: Process count; the output is identical for every value

    Returns:
        Samples ordered by (a, n). A failed column keeps its finite samples and ends
        with one flagged row at the failing step.
    """
    grid = grid_values(cfg)
    logger.info("Sweeping %d values of a with %d worker(s)", len(grid), workers)

    jobs = [(a, cfg) for a in grid]
    if workers > 1:
        chunksize = max(1, len(jobs) // (workers * 4))
        with Pool(workers) as pool:
            columns = pool.map(_sweep_column, jobs, chunksize=chunksize)
    else:
        columns = [_sweep_column(job) for job in jobs]

    return [sample for column in columns for sample in column]
