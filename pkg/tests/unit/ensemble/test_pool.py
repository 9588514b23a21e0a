"""Unit tests for EnsemblePool."""

import numpy as np
import pytest

from mbpep.core import ValidationError
from mbpep.ensemble import EnsemblePool
from mbpep.nnet import init_learner
from mbpep.schemas import TrainConfig
from tests.helpers import make_pool


class TestEnsemblePool:
    """Test cases for selection handling."""

    def test_all_selected_initially(self) -> None:
        """Test the full default mask."""
        pool = make_pool(4)
        assert pool.size == 4
        assert pool.ensemble_size == 4
        assert pool.selected_indices == [0, 1, 2, 3]

    def test_select(self) -> None:
        """Test replacing the mask."""
        pool = make_pool(4)
        pool.select([0, 1, 0, 1])
        assert pool.selected_indices == [1, 3]
        assert pool.selected_learners() == [pool.learners[1], pool.learners[3]]

    def test_empty_mask_rejected(self) -> None:
        """Test that at least one learner must stay selected."""
        with pytest.raises(ValidationError):
            make_pool(3).select([0, 0, 0])

    def test_wrong_length_rejected(self) -> None:
        """Test the mask length check."""
        with pytest.raises(ValidationError):
            make_pool(3).select([1, 1])

    def test_with_mask_leaves_original(self) -> None:
        """Test that with_mask returns an independent selection."""
        pool = make_pool(3)
        view = pool.with_mask([1, 0, 0])
        assert view.ensemble_size == 1
        assert pool.ensemble_size == 3
        assert view.learners[0] is pool.learners[0]

    def test_mixed_architectures_rejected(self) -> None:
        """Test that learners must share layer widths."""
        learners = [init_learner([1, 4, 2]), init_learner([1, 5, 2])]
        with pytest.raises(ValidationError):
            EnsemblePool(
                learners=learners,
                bootstrap_seeds=[0, 1],
                selection_mask=np.ones(2, dtype=bool),
                train_config=TrainConfig(),
            )

    def test_seed_count_checked(self) -> None:
        """Test one bootstrap seed per learner."""
        with pytest.raises(ValidationError):
            EnsemblePool(
                learners=[init_learner([1, 4, 2])],
                bootstrap_seeds=[],
                selection_mask=np.ones(1, dtype=bool),
                train_config=TrainConfig(),
            )
