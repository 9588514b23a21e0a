"""Test-time evaluation of a fused ensemble."""

import time

from mbpep.core import get_logger
from mbpep.data.dataset import Dataset
from mbpep.data.normalization import CONSTANT_LEVEL, denormalize_bounds
from mbpep.ensemble.integration import median_vote
from mbpep.ensemble.pool import EnsemblePool
from mbpep.piloss.batch import IntervalBatch
from mbpep.piloss.losses import loss_report
from mbpep.piloss.metrics import mpiw_all, mpiw_captured
from mbpep.schemas.config import LossConfig
from mbpep.schemas.report import EvalReport

logger = get_logger(__name__)


def fused_batch(pool: EnsemblePool, dataset: Dataset) -> IntervalBatch:
    """Median-voted bounds of the selected learners paired with targets."""
    return median_vote(pool, dataset.features).with_targets(dataset.targets)


def evaluate(
    pool: EnsemblePool,
    dataset: Dataset,
    loss_cfg: LossConfig,
    split_name: str = "test",
    include_timing: bool = True,
) -> EvalReport:
    """Metrics of the median-voted ensemble on ``dataset``.

    Widths are reported in normalized units; when the dataset carries a
    non-degenerate target normalization the original-unit widths are
    reported as well.

    Args:
        pool: Ensemble, evaluated through its current selection.
        dataset: Samples to predict, normalized like the training split.
        loss_cfg: Loss parameters for the reported losses.
        split_name: Label stored in the report.
        include_timing: Record wall-clock prediction time.
    """
    started = time.perf_counter()
    batch = fused_batch(pool, dataset)
    elapsed = time.perf_counter() - started

    report = EvalReport(
        split=split_name,
        n_samples=len(dataset),
        metrics=loss_report(batch, loss_cfg),
        ensemble_size=pool.ensemble_size,
        pool_size=pool.size,
        selected_indices=pool.selected_indices,
        prediction_seconds=elapsed if include_timing else None,
    )

    target_norm = dataset.target_norm
    if target_norm is not None and target_norm[1] > target_norm[0]:
        original = denormalize_bounds(batch, target_norm)
        report.mpiw_all_original = mpiw_all(original)
        report.mpiw_captured_original = mpiw_captured(original)

    logger.info(
        "ensemble_evaluated",
        split=split_name,
        samples=len(dataset),
        ensemble_size=pool.ensemble_size,
        picp=report.metrics.picp_hard,
        mpiw=report.metrics.mpiw_all,
        loss=report.metrics.loss_mbpep,
    )
    return report


def original_unit_batch(batch: IntervalBatch, dataset: Dataset) -> IntervalBatch:
    """``batch`` mapped back to target units when targets were normalized.

    A constant training target was scaled with unit span onto
    `CONSTANT_LEVEL`, so bounds are shifted back by ``min - CONSTANT_LEVEL``.
    Targets then agree with `denormalize` of the same dataset.
    """
    target_norm = dataset.target_norm
    if target_norm is None:
        return batch
    low, high = target_norm
    if not high > low:
        offset = low - CONSTANT_LEVEL
        return IntervalBatch(
            lower=batch.lower + offset,
            upper=batch.upper + offset,
            targets=batch.targets + offset,
        )
    return denormalize_bounds(batch, target_norm)

