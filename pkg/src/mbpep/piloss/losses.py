"""Interval losses: the trainable hinge loss and the LUBE baseline.

`loss_mbpep` is

    mean(width * k_soft) + c * max(0, confidence - mean(k_soft))

with k_soft = sigmoid(s (U - y)) * sigmoid(s (y - L)). `loss_mbpep_grad`
returns its exact partial derivatives with respect to every bound.
"""

import math

import numpy as np
from numpy.typing import NDArray
from scipy.special import expit

from mbpep.core.exceptions import ValidationError
from mbpep.piloss.batch import IntervalBatch
from mbpep.piloss.metrics import (
    mpiw_all,
    mpiw_captured,
    mpiw_mbpep,
    picp_hard,
    picp_soft,
)
from mbpep.schemas.config import LossConfig
from mbpep.schemas.report import LossReport


def loss_mbpep(batch: IntervalBatch, cfg: LossConfig) -> float:
    """Soft-width term plus hinge penalty on soft coverage shortfall."""
    shortfall = cfg.confidence - picp_soft(batch, cfg.softness)
    return mpiw_mbpep(batch, cfg.softness) + cfg.penalty_c * max(0.0, shortfall)


def loss_mbpep_grad(
    batch: IntervalBatch,
    cfg: LossConfig,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Analytic gradient of `loss_mbpep`.

    At the hinge kink (coverage exactly equal to the confidence) the penalty
    contributes the subgradient 0.

    Returns:
        (d loss / d lower, d loss / d upper), each of length N.
    """
    n = len(batch)
    s = cfg.softness
    width = batch.width
    above = expit(s * (batch.upper - batch.targets))
    below = expit(s * (batch.targets - batch.lower))
    k_soft = above * below

    # d above / d upper and d below / d lower
    d_above = s * above * (1.0 - above)
    d_below = -s * below * (1.0 - below)

    d_k_upper = d_above * below
    d_k_lower = above * d_below

    grad_upper = (k_soft + width * d_k_upper) / n
    grad_lower = (-k_soft + width * d_k_lower) / n

    if cfg.confidence - float(np.mean(k_soft)) > 0.0:
        grad_upper = grad_upper - cfg.penalty_c * d_k_upper / n
        grad_lower = grad_lower - cfg.penalty_c * d_k_lower / n

    return grad_lower, grad_upper


def loss_lube(batch: IntervalBatch, cfg: LossConfig) -> float:
    """LUBE-style loss, for reporting only.

    MPIW (captured) / mean width * (1 + exp(c * max(0, confidence - PICP))),
    with the hard PICP.

    Raises:
        ValidationError: If the mean width (the normalizer) is zero.
    """
    normalizer = mpiw_all(batch)
    if normalizer == 0.0:
        raise ValidationError(
            "LUBE normalizer is zero",
            details={"normalizer": "batch_mean_width"},
        )
    shortfall = max(0.0, cfg.confidence - picp_hard(batch))
    try:
        penalty = math.exp(cfg.penalty_c * shortfall)
    except OverflowError:
        penalty = math.inf
    return mpiw_captured(batch) / normalizer * (1.0 + penalty)


def loss_report(batch: IntervalBatch, cfg: LossConfig) -> LossReport:
    """Compute every metric and loss for a batch."""
    try:
        lube: float | None = loss_lube(batch, cfg)
    except ValidationError:
        lube = None
    return LossReport(
        picp_hard=picp_hard(batch),
        picp_soft=picp_soft(batch, cfg.softness),
        mpiw_all=mpiw_all(batch),
        mpiw_captured=mpiw_captured(batch),
        mpiw_mbpep_soft=mpiw_mbpep(batch, cfg.softness),
        loss_mbpep=loss_mbpep(batch, cfg),
        loss_lube=lube,
    )
