"""Synthetic one-dimensional regression tasks.

- cubic: y = x^3 + Gaussian noise
- exp:   y = exp(x) + exponential noise (skewed, non-Gaussian)

Both are pure functions of their arguments and seed.
"""

import numpy as np

from mbpep.core.exceptions import ValidationError
from mbpep.data.dataset import Dataset

CUBIC_X_RANGE = (-4.0, 4.0)
CUBIC_NOISE_STD = 3.0
EXP_X_RANGE = (0.0, 3.0)
EXP_RATE = 1.0


def gen_cubic(
    n: int,
    noise_std: float = CUBIC_NOISE_STD,
    x_range: tuple[float, float] = CUBIC_X_RANGE,
    seed: int = 0,
) -> Dataset:
    """Sample ``n`` points of x^3 plus N(0, noise_std^2) noise, x uniform on x_range."""
    _check(n, x_range)
    if noise_std < 0:
        raise ValidationError("noise_std must be non-negative", details={"noise_std": noise_std})
    rng = np.random.default_rng(seed)
    x = rng.uniform(x_range[0], x_range[1], size=n)
    noise = rng.normal(0.0, noise_std, size=n)
    return Dataset(features=x.reshape(-1, 1), targets=x**3 + noise)


def gen_exp(
    n: int,
    rate: float = EXP_RATE,
    x_range: tuple[float, float] = EXP_X_RANGE,
    seed: int = 0,
) -> Dataset:
    """Sample ``n`` points of exp(x) plus Exponential(rate) noise, x uniform on x_range."""
    _check(n, x_range)
    if rate <= 0:
        raise ValidationError("rate must be positive", details={"rate": rate})
    rng = np.random.default_rng(seed)
    x = rng.uniform(x_range[0], x_range[1], size=n)
    noise = rng.exponential(1.0 / rate, size=n)
    return Dataset(features=x.reshape(-1, 1), targets=np.exp(x) + noise)


def _check(n: int, x_range: tuple[float, float]) -> None:
    if n < 1:
        raise ValidationError("n must be at least 1", details={"n": n})
    low, high = x_range
    if not (np.isfinite(low) and np.isfinite(high) and low < high):
        raise ValidationError("Invalid x_range", details={"x_range": list(x_range)})
