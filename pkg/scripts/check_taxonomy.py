#!/usr/bin/env python3
"""
Check the behavior taxonomy against long orbits.

For a fixed list of seeds this script:
1. Classifies the seed
2. Iterates the orbit in Exact or Float mode
3. Checks the orbit tail against the predicted behavior

Usage:
    python scripts/check_taxonomy.py
"""

import sys
sys.path.insert(0, '.')

from fractions import Fraction

from src.classifier import classify
from src.models import BehaviorKind, Params, SeedPair, UNBOUNDED_KINDS
from src.orbit import iterate

CASES = [
    # (a, b, x_-1, x_0)
    ("-1", "1", "1", "5/2"),
    ("-1", "1", "1", "2"),
    ("-1", "1", "1", "7/4"),
    ("-1", "1", "1", "1/4"),
    ("-1", "1", "1", "0"),
    ("-1", "1", "1", "-1/2"),
    ("1/2", "1", "1", "1"),
    ("-1/2", "2", "1", "3"),
    ("2", "1", "1", "1"),
    ("2", "1", "1", "-1"),
    ("0", "1", "1", "2"),
    ("1/2", "1", "0", "1"),
]


def check_case(a: str, b: str, x_prev: str, x_zero: str, n_max: int = 200) -> bool:
    """Classify one seed and compare with its orbit."""
    params = Params.parse(f"{a},{b}")
    seed = SeedPair.parse(f"{x_prev},{x_zero}")
    behavior = classify(params, seed)
    print(f"\n{params}, seed ({x_prev}, {x_zero}): {behavior.kind.value}")

    float_mode = behavior.kind in UNBOUNDED_KINDS or behavior.kind in (
        BehaviorKind.CONVERGES_TO_ZERO,
        BehaviorKind.CONVERGES_TO_TWO_PERIODIC,
    )
    orbit = iterate(params.to_float(), seed.to_float(), n_max) if float_mode else iterate(params, seed, n_max)
    last = orbit.last_index
    tail = [orbit.term(n) for n in range(last - 3, last + 1)]
    print(f"  last terms: {[float(x) for x in tail]}")

    if behavior.kind == BehaviorKind.EXACTLY_TWO_PERIODIC:
        return orbit.term(last) == orbit.term(last - 2) and orbit.term(last - 1) == orbit.term(last - 3)
    if behavior.kind == BehaviorKind.FOUR_PERIODIC:
        return orbit.term(last) == orbit.term(last - 4)
    if behavior.kind == BehaviorKind.CONVERGES_TO_ZERO:
        return max(abs(x) for x in tail) < max(abs(orbit.term(n)) for n in (-1, 0))
    if behavior.kind == BehaviorKind.CONVERGES_TO_TWO_PERIODIC:
        p_err = abs(orbit.term(last - (last % 2 == 0)) - behavior.p)
        q_err = abs(orbit.term(last - (last % 2 == 1)) - behavior.q)
        print(f"  |x - p| = {p_err:.3g}, |x - q| = {q_err:.3g}")
        return max(p_err, q_err) < 1e-8
    if behavior.kind in UNBOUNDED_KINDS:
        for branch in behavior.divergent:
            late = [n for n in range(last - 3 * branch.modulus, last + 1) if n % branch.modulus == branch.residue]
            if not all(branch.sign * orbit.term(n) > 1e3 for n in late[-2:]):
                return False
        return True
    return orbit.termination.label == "Completed"


def main():
    """Check every case."""
    print("=" * 60)
    print("Behavior Taxonomy Check")
    print("=" * 60)

    results = [(case, check_case(*case)) for case in CASES]

    print("\n" + "=" * 60)
    print("Summary")
    print("=" * 60)
    all_passed = True
    for case, success in results:
        status = "PASS" if success else "FAIL"
        print(f"  {status}: a={case[0]}, b={case[1]}, seed=({case[2]}, {case[3]})")
        all_passed = all_passed and success

    return 0 if all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
