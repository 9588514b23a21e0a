"""Median-vote fusion and the margin criterion of the selected learners."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from mbpep.core.exceptions import ValidationError
from mbpep.data.dataset import Dataset
from mbpep.ensemble.pool import EnsemblePool
from mbpep.nnet.learner import predict
from mbpep.piloss.batch import IntervalBounds

MARGIN_EPSILON = 1e-12


@dataclass(frozen=True)
class MemberBounds:
    """Infer-mode bounds of several learners, shape (members, N)."""

    lower: NDArray[np.float64]
    upper: NDArray[np.float64]

    @property
    def widths(self) -> NDArray[np.float64]:
        """Absolute per-member widths |upper - lower|."""
        return np.abs(self.upper - self.lower)


def member_bounds(
    pool: EnsemblePool,
    inputs: NDArray[np.float64],
    indices: list[int] | None = None,
) -> MemberBounds:
    """Bounds of the learners at ``indices`` (default: the selected ones)."""
    chosen = pool.selected_indices if indices is None else indices
    if not chosen:
        raise ValidationError("No learners selected")
    predictions = [predict(pool.learners[i], inputs) for i in chosen]
    return MemberBounds(
        lower=np.stack([p.lower for p in predictions]),
        upper=np.stack([p.upper for p in predictions]),
    )


def fuse_median(members: MemberBounds) -> IntervalBounds:
    """Per-sample median of member bounds; even counts average the middle pair."""
    return IntervalBounds(
        lower=np.median(members.lower, axis=0),
        upper=np.median(members.upper, axis=0),
    )


def median_vote(pool: EnsemblePool, inputs: NDArray[np.float64]) -> IntervalBounds:
    """Fuse the selected learners' bounds by median voting."""
    return fuse_median(member_bounds(pool, inputs))


def margins_from(members: MemberBounds) -> NDArray[np.float64]:
    """Per-sample mean absolute width across members."""
    return np.asarray(members.widths.mean(axis=0), dtype=np.float64)


def margin(pool: EnsemblePool, x: NDArray[np.float64]) -> float:
    """Mean interval width of the selected learners at one input vector."""
    point = np.asarray(x, dtype=np.float64).reshape(1, -1)
    return float(margins_from(member_bounds(pool, point))[0])


def score_margins(margins: NDArray[np.float64]) -> float:
    """Mean natural log of margins clamped below at `MARGIN_EPSILON`."""
    return float(np.mean(np.log(np.maximum(margins, MARGIN_EPSILON))))


def margin_score(pool: EnsemblePool, dataset: Dataset) -> float:
    """Margin criterion score of the selected learners over ``dataset``."""
    return score_margins(margins_from(member_bounds(pool, dataset.features)))
