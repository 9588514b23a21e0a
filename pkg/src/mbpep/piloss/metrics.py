"""Coverage indicators and interval-width metrics."""

import numpy as np
from numpy.typing import NDArray
from scipy.special import expit

from mbpep.core.exceptions import ValidationError
from mbpep.piloss.batch import IntervalBatch


def hard_indicator(batch: IntervalBatch) -> NDArray[np.float64]:
    """1.0 where lower <= target <= upper (boundaries inclusive), else 0.0."""
    captured = (batch.lower <= batch.targets) & (batch.targets <= batch.upper)
    return captured.astype(np.float64)


def soft_indicator(batch: IntervalBatch, softness: float = 1.0) -> NDArray[np.float64]:
    """Differentiable capture indicator.

    sigmoid(s * (upper - y)) * sigmoid(s * (y - lower)); s = 1 is the
    unscaled product of sigmoids.
    """
    if softness <= 0:
        raise ValidationError("softness must be positive", details={"softness": softness})
    above = expit(softness * (batch.upper - batch.targets))
    below = expit(softness * (batch.targets - batch.lower))
    return np.asarray(above * below, dtype=np.float64)


def picp_hard(batch: IntervalBatch) -> float:
    """Prediction interval coverage probability."""
    return float(np.mean(hard_indicator(batch)))


def picp_soft(batch: IntervalBatch, softness: float = 1.0) -> float:
    """Mean of the soft indicator."""
    return float(np.mean(soft_indicator(batch, softness)))


def mpiw_all(batch: IntervalBatch) -> float:
    """Mean interval width over every sample."""
    return float(np.mean(batch.width))


def weighted_mpiw(batch: IntervalBatch, weights: NDArray[np.float64]) -> float:
    """(1/N) * sum of width_i * weights_i."""
    return float(np.mean(batch.width * weights))


def mpiw_captured(batch: IntervalBatch) -> float:
    """Mean of width times hard indicator; the divisor is N, not the capture count."""
    return weighted_mpiw(batch, hard_indicator(batch))


def mpiw_mbpep(
    batch: IntervalBatch,
    softness: float = 1.0,
    indicator: NDArray[np.float64] | None = None,
) -> float:
    """Mean of width times soft indicator.

    Args:
        batch: Bounds and targets.
        softness: Sigmoid steepness of the soft indicator.
        indicator: Optional replacement indicator; passing
            `hard_indicator(batch)` gives exactly `mpiw_captured`.
    """
    weights = soft_indicator(batch, softness) if indicator is None else indicator
    return weighted_mpiw(batch, weights)
