"""Interval containers shared by every metric and loss."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from mbpep.core.exceptions import ValidationError


@dataclass(frozen=True)
class IntervalBounds:
    """Per-sample lower and upper bounds without targets.

    Attributes:
        lower: Lower bounds, length N.
        upper: Upper bounds, length N.
    """

    lower: NDArray[np.float64]
    upper: NDArray[np.float64]

    def __post_init__(self) -> None:
        lower = np.asarray(self.lower, dtype=np.float64)
        upper = np.asarray(self.upper, dtype=np.float64)
        if lower.ndim != 1 or lower.shape != upper.shape:
            raise ValidationError(
                "Bounds must be 1-D vectors of equal length",
                details={"lower": list(lower.shape), "upper": list(upper.shape)},
            )
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    def __len__(self) -> int:
        return int(self.lower.shape[0])

    @property
    def width(self) -> NDArray[np.float64]:
        """Signed widths upper - lower."""
        return self.upper - self.lower

    def with_targets(self, targets: ArrayLike) -> "IntervalBatch":
        """Attach targets to form an `IntervalBatch`."""
        return IntervalBatch(self.lower, self.upper, np.asarray(targets))


@dataclass(frozen=True)
class IntervalBatch:
    """Paired bounds and targets for N samples.

    Invariants: all three vectors share length N >= 1 and are finite.
    """

    lower: NDArray[np.float64]
    upper: NDArray[np.float64]
    targets: NDArray[np.float64]

    def __post_init__(self) -> None:
        arrays = [
            np.asarray(getattr(self, name), dtype=np.float64)
            for name in ("lower", "upper", "targets")
        ]
        shapes = {array.shape for array in arrays}
        if len(shapes) != 1 or arrays[0].ndim != 1 or arrays[0].shape[0] < 1:
            raise ValidationError(
                "Interval batch vectors must be 1-D, non-empty and equal length",
                details={"shapes": [list(array.shape) for array in arrays]},
            )
        if not all(np.isfinite(array).all() for array in arrays):
            raise ValidationError("Interval batch contains non-finite values")
        for name, array in zip(("lower", "upper", "targets"), arrays):
            object.__setattr__(self, name, array)

    def __len__(self) -> int:
        return int(self.targets.shape[0])

    @property
    def width(self) -> NDArray[np.float64]:
        """Signed widths upper - lower."""
        return self.upper - self.lower

    @property
    def bounds(self) -> IntervalBounds:
        """The bounds without targets."""
        return IntervalBounds(self.lower, self.upper)
