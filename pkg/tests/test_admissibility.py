"""
Unit tests for admissibility module.

Tests forbidden values of alpha and the admissibility verdicts in both modes.
"""

from fractions import Fraction

import pytest

from src.admissibility import check_admissible, forbidden_alpha, forbidden_limit
from src.errors import UnsupportedBranch
from src.models import Params, SeedPair, SingularKind, TerminationKind, VerdictKind
from src.orbit import iterate


def seed_with_alpha(alpha, b=1):
    """Seed (1, alpha/b) whose invariant is alpha."""
    return SeedPair(Fraction(1), Fraction(alpha) / b)


class TestForbiddenAlpha:
    """Tests for forbidden_alpha and forbidden_limit."""

    def test_a_one(self):
        """Test f_n = -1/n for a = 1."""
        assert [forbidden_alpha(Fraction(1), n) for n in (1, 2, 5)] == [-1, Fraction(-1, 2), Fraction(-1, 5)]

    def test_minus_one_even_steps_free(self):
        """Test a = -1 forbids only alpha = 1 at odd steps."""
        assert forbidden_alpha(Fraction(-1), 1) == 1
        assert forbidden_alpha(Fraction(-1), 2) is None

    def test_general_formula(self):
        assert forbidden_alpha(Fraction(1, 2), 2) == Fraction(-1, 3)

    def test_float_large_a(self):
        """Test the inverted form agrees with the exact value."""
        exact = forbidden_alpha(Fraction(3), 4)
        assert forbidden_alpha(3.0, 4) == pytest.approx(float(exact), rel=1e-14)

    def test_index_validated(self):
        with pytest.raises(ValueError):
            forbidden_alpha(Fraction(2), 0)

    def test_limits(self):
        assert forbidden_limit(Fraction(1, 2)) == 0
        assert forbidden_limit(Fraction(3)) == -2
        with pytest.raises(UnsupportedBranch):
            forbidden_limit(Fraction(1))


class TestCheckAdmissibleExact:
    """Tests for check_admissible in Exact mode."""

    @pytest.mark.parametrize("a", [Fraction(1, 2), Fraction(2), Fraction(-1, 2), Fraction(-3), Fraction(3, 2), Fraction(1)])
    @pytest.mark.parametrize("n", [1, 2, 3, 6])
    def test_forbidden_seed_detected(self, a, n):
        """Test alpha = f_n gives NonAdmissible(n) and the orbit stops at step n."""
        params = Params(a, 1)
        seed = seed_with_alpha(forbidden_alpha(a, n))

        verdict = check_admissible(params, seed)
        orbit = iterate(params, seed, n + 3)

        assert verdict.label == f"NonAdmissible({n})"
        assert orbit.termination.kind == TerminationKind.SINGULAR
        assert orbit.termination.step == n

    def test_minus_one_forbidden(self):
        verdict = check_admissible(Params(-1, 1), seed_with_alpha(1))
        assert verdict.label == "NonAdmissible(1)"

    def test_regular(self):
        """Test an ordinary seed is admissible and regular."""
        verdict = check_admissible(Params(Fraction(1, 2), 1), seed_with_alpha(1))
        assert verdict.kind == VerdictKind.ADMISSIBLE_REGULAR
        assert verdict.is_admissible
        assert verdict.is_regular

    def test_singular_alpha_one_minus_a(self):
        verdict = check_admissible(Params(Fraction(1, 2), 1), seed_with_alpha(Fraction(1, 2)))
        assert verdict.singular == SingularKind.ALPHA_ONE_MINUS_A
        assert verdict.label == "AdmissibleSingular(AlphaOneMinusA)"

    def test_singular_alpha_zero(self):
        verdict = check_admissible(Params(Fraction(1, 2), 1), SeedPair(0, 5))
        assert verdict.singular == SingularKind.ALPHA_ZERO
        assert verdict.is_admissible
        assert not verdict.is_regular

    def test_a_zero_alpha_zero(self):
        """Test a = 0 with alpha = 0 fails at the first step."""
        verdict = check_admissible(Params(0, 1), SeedPair(0, 1))
        assert verdict.label == "NonAdmissible(1)"

    def test_a_one_positive_alpha(self):
        verdict = check_admissible(Params(1, 1), seed_with_alpha(Fraction(-2, 3)))
        assert verdict.kind == VerdictKind.ADMISSIBLE_REGULAR

    def test_tiny_alpha_decided(self):
        """Test Exact mode decides even for alpha very close to the limit."""
        verdict = check_admissible(Params(Fraction(1, 2), 1), seed_with_alpha(Fraction(1, 10**12)))
        assert verdict.kind == VerdictKind.ADMISSIBLE_REGULAR

    def test_slow_contraction_decided(self):
        """Test a close to 1 with tiny alpha is decided without scanning every step."""
        verdict = check_admissible(Params(Fraction(999, 1000), 1), seed_with_alpha(Fraction(1, 10**9)))
        assert verdict.kind == VerdictKind.ADMISSIBLE_REGULAR

    @pytest.mark.parametrize("a, n", [
        (Fraction(999, 1000), 5000),
        (Fraction(-3, 2), 200),
        (Fraction(7, 3), 150),
        (Fraction(-1, 3), 401),
    ])
    def test_late_forbidden_step(self, a, n):
        """Test a forbidden value far along the sequence is found at its exact step."""
        forbidden = forbidden_alpha(a, n)

        assert check_admissible(Params(a, 1), seed_with_alpha(forbidden)).label == f"NonAdmissible({n})"
        nearby = check_admissible(Params(a, 1), seed_with_alpha(forbidden * (1 + Fraction(1, 10**30))))
        assert nearby.kind == VerdictKind.ADMISSIBLE_REGULAR

    def test_require_admissible(self):
        verdict = check_admissible(Params(1, 1), seed_with_alpha(Fraction(-1, 4)))
        with pytest.raises(ValueError):
            verdict.require_admissible()


class TestCheckAdmissibleFloat:
    """Tests for check_admissible in Float mode."""

    def test_forbidden_float(self):
        """Test a float forbidden value is matched within tolerance."""
        f = forbidden_alpha(0.5, 3)
        verdict = check_admissible(Params(0.5, 1.0), SeedPair(1.0, f))
        assert verdict.label == "NonAdmissible(3)"

    def test_a_one_float(self):
        verdict = check_admissible(Params(1.0, 1.0), SeedPair(1.0, -0.25))
        assert verdict.label == "NonAdmissible(4)"

    def test_a_one_undecided(self):
        """Test a = 1 with alpha beyond the cap is Undecided."""
        verdict = check_admissible(Params(1.0, 1.0), SeedPair(1.0, -1e-9), n_cap=1000)
        assert verdict.kind == VerdictKind.UNDECIDED
        assert verdict.is_admissible
        assert verdict.label == "Undecided(1000)"

    def test_scan_undecided(self):
        """Test a slowly contracting scan gives up at the cap."""
        verdict = check_admissible(Params(0.999, 1.0), SeedPair(1.0, 1e-300), n_cap=50)
        assert verdict.kind == VerdictKind.UNDECIDED
        assert verdict.max_n_checked == 50

    def test_regular_float(self):
        verdict = check_admissible(Params(2.0, 1.0), SeedPair(1.0, 1.0))
        assert verdict.kind == VerdictKind.ADMISSIBLE_REGULAR
