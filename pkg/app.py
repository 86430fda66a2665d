"""
Rational recurrence toolkit - command-line entry point.

Usage:
    python app.py classify --params 1/2,1 --seed 1,1
    python app.py bifurcate --b 1 --seed 1,0.5 --a-min -1.5 --a-max 1.5 --svg diagram.svg
"""

import sys

from src.cli import run_cli


if __name__ == "__main__":
    sys.exit(run_cli())
