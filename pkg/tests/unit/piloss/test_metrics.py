"""Unit tests for coverage indicators and width metrics."""

import numpy as np
import pytest
from scipy.special import expit

from mbpep.core import ValidationError
from mbpep.piloss import (
    IntervalBatch,
    hard_indicator,
    mpiw_all,
    mpiw_captured,
    mpiw_mbpep,
    picp_hard,
    picp_soft,
    soft_indicator,
)


def batch_of(lower: list[float], upper: list[float], targets: list[float]) -> IntervalBatch:
    return IntervalBatch(np.array(lower), np.array(upper), np.array(targets))


class TestHardIndicator:
    """Test cases for the 0/1 capture indicator."""

    def test_inside_and_outside(self) -> None:
        """Test bounds [0, 2] with targets 1 and 3."""
        np.testing.assert_array_equal(
            hard_indicator(batch_of([0, 0], [2, 2], [1, 3])), [1.0, 0.0]
        )

    def test_boundaries_are_inclusive(self) -> None:
        """Test targets exactly on either bound."""
        np.testing.assert_array_equal(
            hard_indicator(batch_of([0, 0], [2, 2], [2, 0])), [1.0, 1.0]
        )

    def test_zero_width_capture(self) -> None:
        """Test lower = upper = target."""
        assert hard_indicator(batch_of([1.5], [1.5], [1.5]))[0] == 1.0


class TestPicp:
    """Test cases for coverage probabilities."""

    def test_mean_of_indicator(self) -> None:
        """Test k = [1, 0, 1, 1] gives 0.75."""
        batch = batch_of([0, 0, 0, 0], [1, 1, 1, 1], [0.5, 2.0, 0.1, 1.0])
        assert picp_hard(batch) == 0.75

    def test_full_and_zero_coverage(self) -> None:
        """Test the extremes."""
        assert picp_hard(batch_of([0, 0], [1, 1], [0.2, 0.8])) == 1.0
        assert picp_hard(batch_of([0, 0], [1, 1], [-1.0, 5.0])) == 0.0

    def test_soft_is_mean_of_soft_indicator(self) -> None:
        """Test picp_soft against soft_indicator."""
        batch = batch_of([0, 1], [1, 2], [0.3, 0.0])
        assert picp_soft(batch, 4.0) == pytest.approx(np.mean(soft_indicator(batch, 4.0)))


class TestWidths:
    """Test cases for MPIW variants."""

    def test_mpiw_all(self) -> None:
        """Test widths [2, 4] give 3."""
        assert mpiw_all(batch_of([0, 0], [2, 4], [1, 1])) == 3.0

    def test_mpiw_all_zero_width(self) -> None:
        """Test zero-width intervals."""
        assert mpiw_all(batch_of([1, 2], [1, 2], [0, 0])) == 0.0

    def test_mpiw_captured_divides_by_n(self) -> None:
        """Test widths [2, 4] with k = [1, 0] give 1."""
        assert mpiw_captured(batch_of([0, 0], [2, 4], [1, 9])) == 1.0

    def test_mpiw_captured_extremes(self) -> None:
        """Test all captured equals mpiw_all; none captured is zero."""
        inside = batch_of([0, 0], [2, 4], [1, 1])
        assert mpiw_captured(inside) == mpiw_all(inside)
        assert mpiw_captured(batch_of([0, 0], [2, 4], [9, 9])) == 0.0

    def test_mpiw_mbpep_single_sample(self) -> None:
        """Test width 2 at the upper bound with a saturated lower sigmoid."""
        batch = batch_of([0.0], [2.0], [2.0])
        expected = 2.0 * 0.5 * expit(1e3 * 2.0)
        assert mpiw_mbpep(batch, softness=1e3) == pytest.approx(expected)
        assert mpiw_mbpep(batch, softness=1e3) == pytest.approx(1.0)

    def test_mpiw_mbpep_zero_width(self) -> None:
        """Test that zero widths give zero whatever the indicator."""
        assert mpiw_mbpep(batch_of([1.0, 2.0], [1.0, 2.0], [1.0, 0.0]), 3.0) == 0.0

    def test_hard_indicator_reduces_to_captured(self) -> None:
        """Test the explicit-indicator reduction is bit-exact."""
        rng = np.random.default_rng(0)
        lower = rng.normal(size=50)
        batch = IntervalBatch(lower, lower + rng.uniform(0, 2, 50), rng.normal(size=50))
        assert mpiw_mbpep(batch, indicator=hard_indicator(batch)) == mpiw_captured(batch)


class TestSoftIndicator:
    """Test cases for the differentiable indicator."""

    def test_target_at_upper(self) -> None:
        """Test 0.5 * sigmoid(s * width) at y = upper."""
        batch = batch_of([0.0], [1.5], [1.5])
        assert soft_indicator(batch, 2.0)[0] == pytest.approx(0.5 * expit(3.0))

    def test_saturation_limits(self) -> None:
        """Test wide intervals approach 1 and far targets approach 0."""
        wide = batch_of([-1e3], [1e3], [0.0])
        far = batch_of([0.0], [1.0], [50.0])
        assert soft_indicator(wide, 1.0)[0] == pytest.approx(1.0)
        assert soft_indicator(far, 10.0)[0] == pytest.approx(0.0, abs=1e-12)

    def test_converges_to_hard(self) -> None:
        """Test softness 1e4 matches the hard indicator away from boundaries."""
        rng = np.random.default_rng(5)
        lower = rng.uniform(-1, 0, 500)
        upper = lower + rng.uniform(0.1, 2, 500)
        targets = rng.uniform(-2, 2, 500)
        keep = (np.abs(targets - lower) >= 1e-2) & (np.abs(targets - upper) >= 1e-2)
        batch = IntervalBatch(lower[keep], upper[keep], targets[keep])
        diff = np.abs(soft_indicator(batch, 1e4) - hard_indicator(batch))
        assert diff.max() < 1e-3

    def test_rejects_non_positive_softness(self) -> None:
        """Test the softness check."""
        with pytest.raises(ValidationError):
            soft_indicator(batch_of([0.0], [1.0], [0.5]), 0.0)


def random_batch(seed: int, n: int = 200) -> IntervalBatch:
    rng = np.random.default_rng(seed)
    centre = rng.normal(size=n)
    half_width = rng.uniform(0.0, 1.5, size=n)
    return IntervalBatch(centre - half_width, centre + half_width, rng.normal(size=n))


class TestMetricProperties:
    """Test cases for monotonicity and scale behaviour over random batches."""

    @pytest.mark.parametrize("seed", range(10))
    @pytest.mark.parametrize("delta", [1e-3, 0.1, 2.0])
    def test_widening_never_lowers_coverage(self, seed: int, delta: float) -> None:
        """Test that moving both bounds outward by delta keeps or raises PICP."""
        batch = random_batch(seed)
        wider = IntervalBatch(batch.lower - delta, batch.upper + delta, batch.targets)
        assert picp_hard(wider) >= picp_hard(batch)
        assert picp_soft(wider) >= picp_soft(batch)
        assert (soft_indicator(wider) >= soft_indicator(batch)).all()

    @pytest.mark.parametrize("seed", range(10))
    @pytest.mark.parametrize("scale", [0.25, 3.0, 40.0])
    def test_widths_scale_with_units(self, seed: int, scale: float) -> None:
        """Test that rescaling bounds and targets rescales MPIW and keeps hard PICP."""
        batch = random_batch(seed)
        scaled = IntervalBatch(batch.lower * scale, batch.upper * scale, batch.targets * scale)
        assert mpiw_all(scaled) == pytest.approx(scale * mpiw_all(batch), rel=1e-12)
        assert mpiw_captured(scaled) == pytest.approx(scale * mpiw_captured(batch), rel=1e-12)
        assert picp_hard(scaled) == picp_hard(batch)
