"""Min-max scaling fitted on one split and applied to all of them.

Constant columns map to `CONSTANT_LEVEL` (0.5). Parameters are stored on
the returned dataset so bounds can be mapped back to original units.
"""

import numpy as np

from mbpep.core.exceptions import DataError, ValidationError
from mbpep.data.dataset import Dataset, NormParams
from mbpep.piloss.batch import IntervalBatch

CONSTANT_LEVEL = 0.5


def fit_normalization(fit_on: Dataset, include_targets: bool = True) -> NormParams:
    """Column minima and maxima of ``fit_on``."""
    return NormParams(
        feature_min=fit_on.features.min(axis=0),
        feature_max=fit_on.features.max(axis=0),
        target_min=float(fit_on.targets.min()) if include_targets else None,
        target_max=float(fit_on.targets.max()) if include_targets else None,
    )


def normalize(
    dataset: Dataset,
    fit_on: Dataset | None = None,
    include_targets: bool = True,
    params: NormParams | None = None,
) -> Dataset:
    """Scale ``dataset`` with statistics of ``fit_on`` (or precomputed ``params``).

    Raises:
        DataError: If ``dataset`` is already normalized or column counts differ.
    """
    if dataset.normalized:
        raise DataError("Dataset is already normalized")
    if params is None:
        source = fit_on if fit_on is not None else dataset
        if source.n_features != dataset.n_features:
            raise DataError(
                "Column count differs from the normalization source",
                details={"dataset": dataset.n_features, "fit_on": source.n_features},
            )
        params = fit_normalization(source, include_targets)
    elif params.feature_min.shape[0] != dataset.n_features:
        raise DataError(
            "Column count differs from the stored normalization",
            details={"dataset": dataset.n_features, "stored": params.feature_min.shape[0]},
        )

    features = _scale(dataset.features, params.feature_min, params.feature_max)
    targets = dataset.targets
    if params.target_norm is not None:
        low, high = params.target_norm
        targets = _scale(targets, np.float64(low), np.float64(high))
    return Dataset(
        features=features,
        targets=targets,
        feature_names=dataset.feature_names,
        target_name=dataset.target_name,
        norm=params,
    )


def denormalize(dataset: Dataset) -> Dataset:
    """Invert `normalize`, returning a dataset in original units."""
    params = dataset.norm
    if params is None:
        return dataset
    features = _unscale(dataset.features, params.feature_min, params.feature_max)
    targets = dataset.targets
    if params.target_norm is not None:
        low, high = params.target_norm
        targets = _unscale(targets, np.float64(low), np.float64(high))
    return Dataset(
        features=features,
        targets=targets,
        feature_names=dataset.feature_names,
        target_name=dataset.target_name,
    )


def denormalize_bounds(
    bounds: IntervalBatch,
    target_norm: tuple[float, float],
) -> IntervalBatch:
    """Map normalized bounds and targets back to original target units.

    The map v -> min + v * (max - min) is increasing, so bound order and
    capture indicators are preserved.

    Raises:
        ValidationError: If the norm is degenerate (min == max).
    """
    low, high = target_norm
    if not high > low:
        raise ValidationError(
            "Degenerate target normalization",
            details={"target_min": low, "target_max": high},
        )
    span = high - low
    return IntervalBatch(
        lower=low + bounds.lower * span,
        upper=low + bounds.upper * span,
        targets=low + bounds.targets * span,
    )


def _scale(values: np.ndarray, low: np.ndarray, high: np.ndarray) -> np.ndarray:
    span = high - low
    constant = span == 0
    safe_span = np.where(constant, 1.0, span)
    scaled = (values - low) / safe_span
    return np.where(constant, CONSTANT_LEVEL, scaled)


def _unscale(values: np.ndarray, low: np.ndarray, high: np.ndarray) -> np.ndarray:
    span = high - low
    return np.where(span == 0, low, low + values * span)
