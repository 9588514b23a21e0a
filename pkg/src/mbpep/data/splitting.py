"""Deterministic shuffled train/validation/test partition."""

import math

import numpy as np

from mbpep.core.exceptions import DataError
from mbpep.data.dataset import Dataset
from mbpep.schemas.config import SplitSpec

# n * 0.29 with n = 100 evaluates to 28.999999999999996
_FLOOR_TOLERANCE = 1e-9


def split_sizes(n: int, spec: SplitSpec) -> tuple[int, int, int]:
    """Floor-based split sizes; the remainder goes to train.

    Raises:
        DataError: If any split would be empty.
    """
    n_valid = math.floor(n * spec.valid_fraction + _FLOOR_TOLERANCE)
    n_test = math.floor(n * spec.test_fraction + _FLOOR_TOLERANCE)
    n_train = n - n_valid - n_test
    if n < 3 or min(n_train, n_valid, n_test) < 1:
        raise DataError(
            "Dataset too small to give every split a sample",
            details={"n": n, "sizes": [n_train, n_valid, n_test]},
        )
    return n_train, n_valid, n_test


def split_indices(n: int, spec: SplitSpec, seed: int | None = None) -> tuple[
    np.ndarray, np.ndarray, np.ndarray
]:
    """Disjoint index arrays covering range(n)."""
    n_train, n_valid, _ = split_sizes(n, spec)
    rng = np.random.default_rng(seed if seed is not None else spec.seed or 0)
    order = rng.permutation(n)
    return (
        order[:n_train],
        order[n_train : n_train + n_valid],
        order[n_train + n_valid :],
    )


def split(
    dataset: Dataset,
    spec: SplitSpec,
    seed: int | None = None,
) -> tuple[Dataset, Dataset, Dataset]:
    """Partition ``dataset`` into (train, valid, test).

    Args:
        dataset: Data to partition.
        spec: Fractions and default seed.
        seed: Overrides ``spec.seed`` when given.
    """
    train_idx, valid_idx, test_idx = split_indices(len(dataset), spec, seed)
    return dataset.take(train_idx), dataset.take(valid_idx), dataset.take(test_idx)
