"""Trained learner pool with a selection mask."""

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from mbpep.core.exceptions import ValidationError
from mbpep.nnet.learner import BaseLearner
from mbpep.schemas.config import TrainConfig


@dataclass(frozen=True)
class LearnerFailure:
    """A learner whose training raised and was left out of the pool."""

    index: int
    message: str


@dataclass
class EnsemblePool:
    """Learners H_1..H_T, their bootstrap seeds and the selected subset.

    Invariants: every learner shares layer_dims and activation; the mask has
    one entry per learner and at least one selected learner.
    """

    learners: list[BaseLearner]
    bootstrap_seeds: list[int]
    selection_mask: NDArray[np.bool_]
    train_config: TrainConfig
    failures: list[LearnerFailure] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.learners:
            raise ValidationError("Pool needs at least one learner")
        if len(self.bootstrap_seeds) != len(self.learners):
            raise ValidationError(
                "One bootstrap seed per learner is required",
                details={"learners": len(self.learners), "seeds": len(self.bootstrap_seeds)},
            )
        first = self.learners[0]
        for index, learner in enumerate(self.learners[1:], start=1):
            if (
                learner.layer_dims != first.layer_dims
                or learner.activation is not first.activation
            ):
                raise ValidationError(
                    "Pool learners must share architecture",
                    details={"index": index, "layer_dims": learner.layer_dims},
                )
        self.selection_mask = self._checked_mask(self.selection_mask)

    @property
    def size(self) -> int:
        """Total learner count T."""
        return len(self.learners)

    @property
    def ensemble_size(self) -> int:
        """Selected learner count T*."""
        return int(self.selection_mask.sum())

    @property
    def input_dim(self) -> int:
        """Feature count the learners expect."""
        return self.learners[0].input_dim

    @property
    def selected_indices(self) -> list[int]:
        """Indices of selected learners, ascending."""
        return [int(i) for i in np.flatnonzero(self.selection_mask)]

    def selected_learners(self) -> list[BaseLearner]:
        """Selected learners in pool order."""
        return [self.learners[i] for i in self.selected_indices]

    def select(self, mask: ArrayLike) -> None:
        """Replace the selection mask.

        Raises:
            ValidationError: If the mask is empty or has the wrong length.
        """
        self.selection_mask = self._checked_mask(mask)

    def select_all(self) -> None:
        """Select every learner (the unpruned ensemble)."""
        self.selection_mask = np.ones(self.size, dtype=bool)

    def with_mask(self, mask: ArrayLike) -> "EnsemblePool":
        """A view of the same learners with another selection."""
        return EnsemblePool(
            learners=self.learners,
            bootstrap_seeds=self.bootstrap_seeds,
            selection_mask=np.asarray(mask, dtype=bool),
            train_config=self.train_config,
            failures=self.failures,
        )

    def _checked_mask(self, mask: ArrayLike) -> NDArray[np.bool_]:
        checked = np.asarray(mask, dtype=bool).copy()
        if checked.shape != (self.size,):
            raise ValidationError(
                "Selection mask length differs from pool size",
                details={"mask": list(checked.shape), "pool_size": self.size},
            )
        if not checked.any():
            raise ValidationError("Selection mask selects no learner")
        return checked
