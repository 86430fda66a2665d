#!/usr/bin/env python3
"""
Regenerate the two reference bifurcation diagrams.

1. b = -1, seed (1, 2), a in [0, 4]: exact 2-periodicity appears at the isolated
   point a = 3
2. b = -1, seed (1, -2), a near -1: bounded branches on both sides of a = -1

Writes CSV and SVG files into the output directory (default: figures/).

Usage:
    python scripts/reproduce_figures.py [output_dir] [--workers N]
"""

import sys
sys.path.insert(0, '.')

import argparse
import logging
from pathlib import Path

from src.bifurcation import sweep
from src.classifier import singular_bifurcation_point
from src.exporter import emit_csv, emit_svg
from src.models import PlotOptions, SeedPair, SweepConfig

FIGURES = {
    "singular_point": SweepConfig(
        a_min=0.0, a_max=4.0, step=0.005, b=-1.0, seed=(1.0, 2.0), iters=400, keep_from=350
    ),
    "near_minus_one": SweepConfig(
        a_min=-1.02, a_max=-0.98, step=1e-4, b=-1.0, seed=(1.0, -2.0), iters=1600, keep_from=1500
    ),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[1])
    parser.add_argument("output_dir", nargs="?", default="figures")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--y-clip", type=float, default=10.0)
    args = parser.parse_args()

    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    for name, cfg in FIGURES.items():
        a_star, isolated = singular_bifurcation_point(cfg.b, SeedPair(*cfg.seed))
        print(f"{name}: exact 2-periodicity at a = {a_star} ({'isolated' if isolated else 'inside |a| <= 1'})")

        samples = sweep(cfg, workers=args.workers)
        emit_csv(samples, str(out / f"{name}.csv"))
        emit_svg(
            samples,
            PlotOptions(y_clip=args.y_clip, title=f"b = {cfg.b}, seed {cfg.seed}"),
            sink=str(out / f"{name}.svg"),
        )
        flagged = sum(1 for s in samples if s.x is None)
        print(f"  {len(samples)} samples, {flagged} flagged -> {out / name}.csv/.svg")

    return 0


if __name__ == "__main__":
    sys.exit(main())
