"""Datasets, synthetic generators, CSV I/O, normalization and splitting."""

from mbpep.data.csv_io import load_csv, save_csv, save_trace
from mbpep.data.dataset import Dataset, NormParams
from mbpep.data.generators import gen_cubic, gen_exp
from mbpep.data.normalization import (
    denormalize,
    denormalize_bounds,
    fit_normalization,
    normalize,
)
from mbpep.data.splitting import split, split_indices, split_sizes

__all__ = [
    "Dataset",
    "NormParams",
    "gen_cubic",
    "gen_exp",
    "load_csv",
    "save_csv",
    "save_trace",
    "normalize",
    "denormalize",
    "denormalize_bounds",
    "fit_normalization",
    "split",
    "split_indices",
    "split_sizes",
]
