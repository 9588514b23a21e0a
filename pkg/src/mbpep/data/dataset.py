"""In-memory regression dataset."""

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from mbpep.core.exceptions import DataError


@dataclass(frozen=True)
class NormParams:
    """Min-max statistics fitted on one dataset.

    Attributes:
        feature_min: Per-column minimum, length d.
        feature_max: Per-column maximum, length d.
        target_min: Target minimum, or None when targets are left unscaled.
        target_max: Target maximum, or None when targets are left unscaled.
    """

    feature_min: NDArray[np.float64]
    feature_max: NDArray[np.float64]
    target_min: float | None = None
    target_max: float | None = None

    @property
    def target_norm(self) -> tuple[float, float] | None:
        """(min, max) of the target, if targets are normalized."""
        if self.target_min is None or self.target_max is None:
            return None
        return (self.target_min, self.target_max)


@dataclass(frozen=True)
class Dataset:
    """Features, targets and the normalization applied to them.

    Invariants: N >= 1, d >= 1, all values finite.

    Attributes:
        features: N x d matrix.
        targets: Length-N vector.
        feature_names: Column names of the features.
        target_name: Column name of the target.
        norm: Parameters used to normalize, or None for raw data.
    """

    features: NDArray[np.float64]
    targets: NDArray[np.float64]
    feature_names: tuple[str, ...] = field(default=())
    target_name: str = "y"
    norm: NormParams | None = None

    def __post_init__(self) -> None:
        features = np.asarray(self.features, dtype=np.float64)
        targets = np.asarray(self.targets, dtype=np.float64)
        if features.ndim == 1:
            features = features.reshape(-1, 1)
        if features.ndim != 2 or targets.ndim != 1:
            raise DataError(
                "Features must be N x d and targets length N",
                details={"features": list(features.shape), "targets": list(targets.shape)},
            )
        n, d = features.shape
        if n < 1 or d < 1 or targets.shape[0] != n:
            raise DataError(
                "Dataset needs at least one sample and one feature",
                details={"features": list(features.shape), "targets": list(targets.shape)},
            )
        if not (np.isfinite(features).all() and np.isfinite(targets).all()):
            raise DataError("Dataset contains non-finite values")
        names = self.feature_names or tuple(
            "x" if d == 1 else f"x{i + 1}" for i in range(d)
        )
        if len(names) != d:
            raise DataError(
                "feature_names length differs from column count",
                details={"names": len(names), "columns": d},
            )
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "targets", targets)
        object.__setattr__(self, "feature_names", tuple(names))

    def __len__(self) -> int:
        return int(self.targets.shape[0])

    @property
    def n_features(self) -> int:
        """Feature column count d."""
        return int(self.features.shape[1])

    @property
    def normalized(self) -> bool:
        """True once `normalize` has been applied."""
        return self.norm is not None

    @property
    def target_norm(self) -> tuple[float, float] | None:
        """(min, max) of the target normalization, if any."""
        return self.norm.target_norm if self.norm is not None else None

    def take(self, indices: ArrayLike) -> "Dataset":
        """Rows at ``indices`` (repeats allowed), keeping names and norm."""
        idx = np.asarray(indices, dtype=np.intp)
        return Dataset(
            features=self.features[idx],
            targets=self.targets[idx],
            feature_names=self.feature_names,
            target_name=self.target_name,
            norm=self.norm,
        )
