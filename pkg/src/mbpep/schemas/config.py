"""Pydantic schemas for run configuration.

Each section maps to one table of the TOML config document
(``[train]``, ``[loss]``, ...). Every field has a default, so a document
naming only a data source is a complete configuration.
"""

import math
from enum import StrEnum
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Activation(StrEnum):
    """Hidden-layer activation of a base learner."""

    SIGMOID = "sigmoid"
    RELU = "relu"


class BoundMode(StrEnum):
    """How the two raw output heads map to (lower, upper).

    ``softplus``: lower = o1, upper = o1 + softplus(o2), so width >= 0.
    ``raw``: lower = o1, upper = o2, as two independent heads.
    """

    SOFTPLUS = "softplus"
    RAW = "raw"


class OptimizerKind(StrEnum):
    """Gradient update rule."""

    SGD = "sgd"
    ADAM = "adam"


class SelectionRule(StrEnum):
    """Which archive entry pruning returns."""

    MIN_OBJECTIVE = "min_objective"
    KNEE = "knee"


class ObjectiveLoss(StrEnum):
    """Loss term of the subset objective."""

    FUSED = "fused"
    MEAN = "mean"


class ObjectiveSplit(StrEnum):
    """Dataset split the subset objective is evaluated on."""

    VALID = "valid"
    TRAIN = "train"


class Generator(StrEnum):
    """Synthetic data generators."""

    CUBIC = "cubic"
    EXP = "exp"


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class LossConfig(_Section):
    """Coverage/width loss parameters.

    Attributes:
        confidence: Required coverage 1 - phi.
        penalty_c: Hinge penalty coefficient c.
        softness: Steepness of the sigmoids in the soft indicator.
    """

    confidence: float = Field(default=0.95, gt=0.0, lt=1.0)
    penalty_c: float = Field(default=15.0, ge=0.0)
    softness: float = Field(default=10.0, gt=0.0)


class OptimizerConfig(_Section):
    """Optimizer template copied into every learner's `OptimizerState`."""

    kind: OptimizerKind = OptimizerKind.ADAM
    learning_rate: float = Field(default=1e-2, gt=0.0)
    beta1: float = Field(default=0.9, gt=0.0, lt=1.0)
    beta2: float = Field(default=0.999, gt=0.0, lt=1.0)
    epsilon: float = Field(default=1e-8, gt=0.0)


class TrainConfig(_Section):
    """Pool training parameters.

    Attributes:
        epochs: Passes over each learner's bootstrap resample.
        batch_size: Minibatch size.
        pool_size: Number of learners T trained before pruning.
        hidden_dims: Hidden layer widths; output width is always 2.
        activation: Hidden activation; None picks by depth.
        dropout_retention: Keep probability of hidden-unit dropout.
        bound_mode: Output parameterization.
        optimizer: Update rule and hyperparameters.
        loss: Training loss parameters.
    """

    epochs: int = Field(default=300, ge=0)
    batch_size: int = Field(default=32, ge=1)
    pool_size: int = Field(default=5, ge=1)
    hidden_dims: tuple[int, ...] = Field(default=(100,))
    activation: Activation | None = None
    dropout_retention: float = Field(default=0.8, gt=0.0, le=1.0)
    bound_mode: BoundMode = BoundMode.SOFTPLUS
    optimizer: OptimizerConfig = Field(default_factory=OptimizerConfig)
    loss: LossConfig = Field(default_factory=LossConfig)

    @model_validator(mode="after")
    def _check_hidden_dims(self) -> "TrainConfig":
        if any(width < 1 for width in self.hidden_dims):
            raise ValueError("hidden_dims entries must be positive")
        return self

    def layer_dims(self, input_dim: int) -> list[int]:
        """Full layer widths for a learner on ``input_dim`` features."""
        return [input_dim, *self.hidden_dims, 2]


class PruneConfig(_Section):
    """Pareto subset search parameters.

    ``max_iterations`` and ``flip_probability`` default to ceil(2 e T^2) and
    1/T for a pool of T learners.
    """

    enabled: bool = True
    max_iterations: int | None = Field(default=None, ge=1)
    flip_probability: float | None = Field(default=None, gt=0.0, le=1.0)
    rng_seed: int | None = Field(default=None, ge=0)
    selection_rule: SelectionRule = SelectionRule.MIN_OBJECTIVE
    objective_loss: ObjectiveLoss = ObjectiveLoss.FUSED
    objective_split: ObjectiveSplit = ObjectiveSplit.VALID

    def iterations_for(self, pool_size: int) -> int:
        """Iteration budget for a pool of ``pool_size`` learners."""
        if self.max_iterations is not None:
            return self.max_iterations
        return math.ceil(2.0 * math.e * pool_size**2)

    def flip_probability_for(self, pool_size: int) -> float:
        """Per-bit mutation probability for a pool of ``pool_size`` learners."""
        if self.flip_probability is not None:
            return self.flip_probability
        return 1.0 / pool_size


class SplitSpec(_Section):
    """Train/validation/test proportions."""

    train_fraction: float = Field(default=0.5, gt=0.0, lt=1.0)
    valid_fraction: float = Field(default=0.2, gt=0.0, lt=1.0)
    test_fraction: float = Field(default=0.3, gt=0.0, lt=1.0)
    seed: int | None = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _check_sum(self) -> "SplitSpec":
        total = self.train_fraction + self.valid_fraction + self.test_fraction
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"split fractions must sum to 1, got {total}")
        return self


class DataSourceConfig(_Section):
    """Where the dataset comes from.

    A ``csv_path`` takes precedence over the generator.
    """

    generator: Generator = Generator.CUBIC
    csv_path: Path | None = None
    target_column: str | None = None
    n: int = Field(default=1000, ge=1)
    noise_std: float = Field(default=3.0, ge=0.0)
    rate: float = Field(default=1.0, gt=0.0)
    x_low: float | None = None
    x_high: float | None = None
    seed: int | None = Field(default=None, ge=0)
    normalize_targets: bool = True

    def x_range(self) -> tuple[float, float]:
        """Generator input range with per-generator defaults filled in."""
        low, high = (-4.0, 4.0) if self.generator is Generator.CUBIC else (0.0, 3.0)
        return (
            self.x_low if self.x_low is not None else low,
            self.x_high if self.x_high is not None else high,
        )


class OutputConfig(_Section):
    """Output file locations."""

    model_path: Path = Path("mbpep-model.json")
    report_path: Path | None = None
    trace_path: Path | None = None
    include_timings: bool = False

    def resolved_report_path(self) -> Path:
        """Report location, defaulting to the model path's ``.report.json``."""
        if self.report_path is not None:
            return self.report_path
        return self.model_path.with_suffix(".report.json")


class RunConfig(_Section):
    """Complete experiment configuration.

    The top-level ``loss`` section is the single source of loss parameters;
    it is copied into ``train.loss`` after validation.
    """

    seed: int = Field(default=0, ge=0)
    threads: int | None = Field(default=None, ge=1)
    data: DataSourceConfig = Field(default_factory=DataSourceConfig)
    split: SplitSpec = Field(default_factory=SplitSpec)
    train: TrainConfig = Field(default_factory=TrainConfig)
    loss: LossConfig = Field(default_factory=LossConfig)
    prune: PruneConfig = Field(default_factory=PruneConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    @model_validator(mode="after")
    def _share_loss(self) -> "RunConfig":
        if self.train.loss != self.loss:
            object.__setattr__(
                self, "train", self.train.model_copy(update={"loss": self.loss})
            )
        return self

    def data_seed(self) -> int:
        """Seed for synthetic data generation."""
        return self.data.seed if self.data.seed is not None else self.seed

    def split_seed(self) -> int:
        """Seed for the train/valid/test shuffle."""
        return self.split.seed if self.split.seed is not None else self.seed

    def prune_seed(self) -> int:
        """Seed for the Pareto search."""
        return self.prune.rng_seed if self.prune.rng_seed is not None else self.seed

    def with_seed(self, seed: int) -> "RunConfig":
        """Copy of this config with a different base seed."""
        return self.model_copy(update={"seed": seed})
