"""Prediction-interval metrics and losses."""

from mbpep.piloss.batch import IntervalBatch, IntervalBounds
from mbpep.piloss.losses import loss_lube, loss_mbpep, loss_mbpep_grad, loss_report
from mbpep.piloss.metrics import (
    hard_indicator,
    mpiw_all,
    mpiw_captured,
    mpiw_mbpep,
    picp_hard,
    picp_soft,
    soft_indicator,
    weighted_mpiw,
)

__all__ = [
    "IntervalBatch",
    "IntervalBounds",
    "hard_indicator",
    "soft_indicator",
    "picp_hard",
    "picp_soft",
    "mpiw_all",
    "mpiw_captured",
    "mpiw_mbpep",
    "weighted_mpiw",
    "loss_mbpep",
    "loss_mbpep_grad",
    "loss_lube",
    "loss_report",
]
