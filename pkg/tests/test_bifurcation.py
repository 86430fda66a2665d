"""
Unit tests for bifurcation module.

Tests the a-grid, column iteration with flagged failures, and determinism of
parallel sweeps.
"""

import pytest

from src.bifurcation import grid_values, sweep
from src.classifier import classify
from src.exporter import emit_csv
from src.models import BehaviorKind, Params, SampleFlag, SeedPair, SweepConfig
from src.orbit import iterate


def create_config(**overrides) -> SweepConfig:
    """Create a sweep config with small defaults."""
    values = dict(a_min=0.5, a_max=0.6, step=0.01, b=1.0, seed=(1.0, 0.5), iters=100, keep_from=50)
    values.update(overrides)
    return SweepConfig(**values)


class TestGrid:
    """Tests for grid_values function."""

    def test_grid_hits_decimal_points(self):
        """Test a = 3 is on the grid from 0 in steps of 0.005."""
        grid = grid_values(create_config(a_min=0.0, a_max=4.0, step=0.005))
        assert len(grid) == 801
        assert 3.0 in grid
        assert grid[0] == 0.0
        assert grid[-1] == 4.0

    def test_grid_no_drift(self):
        grid = grid_values(create_config(a_min=-1.02, a_max=-0.98, step=1e-4))
        assert len(grid) == 401
        assert -1.0 in grid

    def test_invalid_configs(self):
        with pytest.raises(ValueError):
            create_config(step=0.0)
        with pytest.raises(ValueError):
            create_config(a_min=1.0, a_max=0.0)
        with pytest.raises(ValueError):
            create_config(keep_from=200)

    def test_keep_from_must_precede_iters(self):
        """Test keep_from equal to iters leaves nothing to keep and is rejected."""
        with pytest.raises(ValueError):
            create_config(iters=100, keep_from=100)
        assert create_config(iters=100, keep_from=99).keep_from == 99


class TestSweep:
    """Tests for sweep function."""

    def test_singular_point_column(self):
        """Test b = -1, seed (1, 2) at a = 3 alternates between 1 and 2."""
        cfg = create_config(a_min=3.0, a_max=3.0, step=0.005, b=-1.0, seed=(1.0, 2.0), iters=400, keep_from=350)
        samples = sweep(cfg)

        assert len(samples) == 51
        assert all(s.flag == SampleFlag.OK for s in samples)
        assert all(s.x == (2.0 if s.n % 2 == 0 else 1.0) for s in samples)

    def test_singular_point_exact(self):
        """Test the same seed is exactly 2-periodic in Exact mode."""
        params, seed = Params(3, -1), SeedPair(1, 2)
        orbit = iterate(params, seed, 400)

        assert set(orbit.terms[0::2]) == {1}
        assert set(orbit.terms[1::2]) == {2}
        assert classify(params, seed).kind == BehaviorKind.EXACTLY_TWO_PERIODIC

    @pytest.mark.slow
    def test_full_first_configuration(self):
        """Test the full 0..4 sweep keeps a = 3 exactly periodic."""
        cfg = create_config(a_min=0.0, a_max=4.0, step=0.005, b=-1.0, seed=(1.0, 2.0), iters=400, keep_from=350)
        samples = [s for s in sweep(cfg) if s.a == 3.0]
        assert {s.x for s in samples} == {1.0, 2.0}

    def test_bounded_both_sides_of_minus_one(self):
        """Test seed (1, -2) with b = -1 stays bounded near a = -1."""
        cfg = create_config(a_min=-1.001, a_max=-0.999, step=1e-4, b=-1.0, seed=(1.0, -2.0), iters=1600, keep_from=1400)
        samples = sweep(cfg)

        assert all(s.flag == SampleFlag.OK for s in samples)
        assert max(abs(s.x) for s in samples) < 50
        assert min(s.a for s in samples) < -1.0 < max(s.a for s in samples)

    def test_degenerate_column(self):
        """Test (a, b) = (0, 0) yields a single singular row."""
        samples = sweep(create_config(a_min=-0.01, a_max=0.01, step=0.01, b=0.0, seed=(1.0, 1.0), iters=20, keep_from=0))
        zero_column = [s for s in samples if s.a == 0.0]

        assert len(zero_column) == 1
        assert zero_column[0].flag == SampleFlag.SINGULAR
        assert zero_column[0].n == 1
        assert zero_column[0].x is None

    def test_singular_column(self):
        samples = sweep(create_config(a_min=1.0, a_max=1.0, b=-1.0, seed=(1.0, 1.0), iters=10, keep_from=1))
        assert [(s.n, s.flag) for s in samples] == [(1, SampleFlag.SINGULAR)]

    def test_non_finite_column(self):
        """Test overflow keeps finite samples and appends one flagged row."""
        samples = sweep(create_config(a_min=1e-300, a_max=1e-300, b=0.0, seed=(1.0, 1.0), iters=10, keep_from=0))

        assert [s.n for s in samples] == [-1, 0, 1, 2, 3]
        assert samples[-1].flag == SampleFlag.NON_FINITE
        assert all(s.flag == SampleFlag.OK for s in samples[:-1])

    def test_workers_are_deterministic(self):
        """Test pooled sweeps give byte-identical CSV."""
        cfg = create_config()
        serial = sweep(cfg, workers=1)
        pooled = sweep(cfg, workers=3)

        assert serial == pooled
        assert emit_csv(serial) == emit_csv(pooled)

    def test_right_side_approaches_minus_one_cycle(self):
        """Test at fixed iterations the columns tend to the a = -1 cycle (1, -2) as a -> -1+."""
        distances = []
        for eps in (1e-4, 1e-5, 1e-6):
            cfg = create_config(a_min=-1 + eps, a_max=-1 + eps, b=-1.0, seed=(1.0, -2.0), iters=400, keep_from=390)
            samples = sweep(cfg)
            assert all(s.flag == SampleFlag.OK for s in samples)
            distances.append(max(abs(s.x - (1.0 if s.n % 2 else -2.0)) for s in samples))

        assert distances[0] > distances[1] > distances[2]
        assert distances[2] < 5e-3

    def test_long_runs_split_at_minus_one(self):
        """Test long runs stay on a 2-cycle right of a = -1 and collapse to zero left of it."""
        cfg = create_config(a_min=-1.1, a_max=-0.9, step=0.01, b=-1.0, seed=(1.0, -2.0), iters=1600, keep_from=1590)
        samples = sweep(cfg)

        left = [s for s in samples if s.a <= -1.07]
        centre = [s for s in samples if s.a == -1.0]
        right = [s for s in samples if -0.99 <= s.a <= -0.9]

        assert all(s.flag == SampleFlag.OK for s in samples)
        assert all(abs(s.x) < 1e-3 for s in left)
        assert {s.x for s in centre} == {1.0, -2.0}
        assert all(0.3 < s.x < 5 for s in right if s.n % 2)
        assert all(-5 < s.x < -0.3 for s in right if s.n % 2 == 0)
