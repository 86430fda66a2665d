"""
Unit tests for orbit module.

Tests direct iteration, termination handling and the closed-form orbit.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import MixedModeError, NotAdmissible, ResourceLimitExceeded
from src.models import Params, SeedPair, TerminationKind
from src.orbit import (
    closed_form_orbit,
    closed_form_term,
    coefficient_products,
    even_odd_split,
    iterate,
    partial_products,
)

positive = st.fractions(min_value=Fraction(1, 10), max_value=3, max_denominator=10)


def create_exact_case(a="1/2", b="1", x_prev="1", x_zero="1"):
    """Create exact params and seed from text."""
    return Params.parse(f"{a},{b}"), SeedPair.parse(f"{x_prev},{x_zero}")


class TestIterate:
    """Tests for iterate function."""

    def test_first_terms(self):
        """Test the first terms by hand."""
        params, seed = create_exact_case()
        orbit = iterate(params, seed, 2)

        assert orbit.terms == (1, 1, Fraction(2, 3), Fraction(6, 7))
        assert orbit.termination.kind == TerminationKind.COMPLETED
        assert orbit.last_index == 2

    def test_singular_at_first_step(self):
        """Test (a, b) = (1, -1) with seed (1, 1) stops at SingularAt(1)."""
        params, seed = create_exact_case(a="1", b="-1")
        orbit = iterate(params, seed, 10)

        assert orbit.termination.label == "SingularAt(1)"
        assert orbit.last_index == 0

    def test_a_zero_is_two_periodic_from_one(self):
        """Test a = 0 gives x_1 = 1/(b*x_0) and period 2 afterwards."""
        params, seed = create_exact_case(a="0", b="1", x_prev="1", x_zero="2")
        orbit = iterate(params, seed, 8)

        assert [orbit.term(n) for n in range(1, 9)] == [Fraction(1, 2), 2] * 4

    def test_bit_cap(self):
        """Test exact terms outgrowing the cap raise."""
        params, seed = create_exact_case(a="1/3")
        with pytest.raises(ResourceLimitExceeded):
            iterate(params, seed, 100, max_bits=64)

    def test_non_finite_float(self):
        """Test float overflow ends the orbit with NonFiniteAt."""
        orbit = iterate(Params(1e-300, 0.0), SeedPair(1.0, 1.0), 10)
        assert orbit.termination.label == "NonFiniteAt(3)"
        assert orbit.last_index == 2

    def test_ill_conditioned_step_flagged(self):
        """Test near-cancelling denominators are flagged."""
        orbit = iterate(Params(1.0, -1.0), SeedPair(1.0, 1.0 + 1e-15), 1)
        assert 1 in orbit.ill_conditioned

    def test_mixed_modes(self):
        with pytest.raises(MixedModeError):
            iterate(Params(Fraction(1, 2), 1), SeedPair(1.0, 1.0), 5)

    def test_negative_n_max(self):
        params, seed = create_exact_case()
        with pytest.raises(ValueError):
            iterate(params, seed, -1)

    def test_term_out_of_range(self):
        params, seed = create_exact_case()
        with pytest.raises(IndexError):
            iterate(params, seed, 3).term(4)

    def test_even_odd_split(self):
        """Test splitting into even- and odd-indexed terms."""
        params, seed = create_exact_case()
        orbit = iterate(params, seed, 4)
        evens, odds = even_odd_split(orbit)

        assert evens == (orbit.term(0), orbit.term(2), orbit.term(4))
        assert odds == (orbit.term(-1), orbit.term(1), orbit.term(3))


class TestClosedForm:
    """Tests for the closed-form orbit."""

    @settings(max_examples=40, deadline=None)
    @given(a=positive, b=positive, x_prev=positive, x_zero=positive)
    def test_matches_iteration(self, a, b, x_prev, x_zero):
        """Test closed form equals iteration exactly for positive inputs."""
        params, seed = Params(a, b), SeedPair(x_prev, x_zero)
        assert closed_form_orbit(params, seed, 12) == iterate(params, seed, 12).terms

    def test_negative_parameters(self):
        """Test agreement for an admissible seed with negative a."""
        params, seed = create_exact_case(a="-2/3", b="3", x_prev="1/2", x_zero="-5")
        assert closed_form_orbit(params, seed, 15) == iterate(params, seed, 15).terms

    def test_single_term(self):
        params, seed = create_exact_case(a="3", b="2")
        assert closed_form_term(params, seed, 7) == iterate(params, seed, 7).term(7)

    def test_short_orbits(self):
        params, seed = create_exact_case()
        assert closed_form_orbit(params, seed, -1) == (1,)
        assert closed_form_orbit(params, seed, 0) == (1, 1)

    def test_not_admissible(self):
        """Test a forbidden seed is refused."""
        params, seed = create_exact_case(a="1", b="1", x_prev="1", x_zero="-1/2")
        with pytest.raises(NotAdmissible) as exc:
            closed_form_orbit(params, seed, 5)
        assert exc.value.step == 2


class TestProducts:
    """Tests for running products of h."""

    def test_minus_one_products(self):
        """Test a = -1, alpha = 3: Q_k = 2^(k+1), P_k = 2^-(k+1)."""
        products = coefficient_products(Fraction(-1), Fraction(3), 5)

        assert products.k_max == 5
        for k in range(6):
            assert products.odd_products[k] == 2 ** (k + 1)
            assert products.even_products[k] == Fraction(1, 2 ** (k + 1))

    def test_partial_products_match_orbit(self):
        """Test x_{2k+1} = x_{-1} P_k and x_{2k+2} = x_0 Q_k."""
        params, seed = create_exact_case(x_prev="2", x_zero="3")
        products = partial_products(params, seed, 4)
        orbit = iterate(params, seed, 10)

        for k in range(5):
            assert orbit.term(2 * k + 1) == 2 * products.even_products[k]
            assert orbit.term(2 * k + 2) == 3 * products.odd_products[k]
