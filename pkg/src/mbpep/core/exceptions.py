"""Custom exceptions for mbpep.

Every error raised by the package derives from `MbpepError`; the CLI maps
the branches below to exit codes.

    MbpepError (base)
    ├── ConfigurationError    # Run config / flag problems
    ├── ValidationError       # Invalid arguments, shape mismatches
    ├── DataError             # CSV and dataset problems
    │   └── NotFoundError     # Missing input file
    ├── ModelFormatError      # Model file version or layout mismatch
    └── TrainingError         # Learner training failures
        └── NonFiniteError    # NaN/Inf in loss or gradients

Usage:
    from mbpep.core import DataError

    raise DataError(
        "Non-numeric cell",
        details={"row": 3, "column": 2, "value": "abc"},
    )
"""

from typing import Any


class MbpepError(Exception):
    """Root of the package error tree.

    ``details`` holds JSON-friendly context that the CLI logs next to
    ``message``.

    Attributes:
        message: What went wrong, one line.
        details: Key-value context (paths, indices, offending values).
    """

    def __init__(self, message: str, details: dict[str, Any] | None = None) -> None:
        self.message = message
        self.details = details or {}
        super().__init__(self.message)


class ConfigurationError(MbpepError):
    """Raised when a run configuration or command-line flag is invalid.

    Example:
        raise ConfigurationError(
            "Invalid run configuration",
            details={"errors": [{"loc": "train.epochs", "msg": "must be >= 0"}]},
        )
    """


class ValidationError(MbpepError):
    """Raised for invalid arguments to library operations.

    Use when:
    - Array shapes do not chain (weights, gradients, inputs)
    - An interval batch has mismatched lengths or non-finite entries
    - A parameter is outside its documented range
    """


class DataError(MbpepError):
    """Raised for dataset problems.

    Use when:
    - A CSV row is malformed or a cell is non-numeric
    - A dataset is empty or too small to split
    - A model is applied to data with a different column count
    """


class NotFoundError(DataError):
    """Raised when an input file does not exist."""


class ModelFormatError(MbpepError):
    """Raised when a model file cannot be interpreted.

    Example:
        raise ModelFormatError(
            "Unsupported model version",
            details={"expected": "mbpep-model/1", "received": "mbpep-model/0"},
        )
    """


class TrainingError(MbpepError):
    """Raised when training a learner (or a whole pool) fails.

    Attributes:
        learner_index: Position of the failing learner in the pool, if known.
    """

    def __init__(
        self,
        message: str,
        learner_index: int | None = None,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message, details)
        self.learner_index = learner_index


class NonFiniteError(TrainingError):
    """Raised when a loss value or gradient contains NaN or Inf."""
