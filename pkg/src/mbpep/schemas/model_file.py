"""Pydantic schemas for the model file ("mbpep-model/1").

Weights are stored row-major as nested lists of 64-bit floats; JSON float
text is the shortest repr that round-trips, so a save/load cycle is
bit-exact.
"""

from typing import Literal

from pydantic import BaseModel, ConfigDict

from mbpep.schemas.config import Activation, BoundMode, RunConfig, TrainConfig

MODEL_VERSION = "mbpep-model/1"


class LearnerDocument(BaseModel):
    """Serialized base learner."""

    model_config = ConfigDict(extra="forbid")

    layer_dims: list[int]
    activation: Activation
    dropout_retention: float
    bound_mode: BoundMode
    rng_seed: int
    weights: list[list[list[float]]]
    biases: list[list[float]]


class NormalizationDocument(BaseModel):
    """Min-max parameters fitted on the training split."""

    model_config = ConfigDict(extra="forbid")

    feature_min: list[float]
    feature_max: list[float]
    target_min: float | None
    target_max: float | None
    feature_names: list[str]
    target_name: str


class ModelDocument(BaseModel):
    """Complete trained ensemble."""

    model_config = ConfigDict(extra="forbid")

    version: Literal["mbpep-model/1"] = MODEL_VERSION
    train_config: TrainConfig
    run_config: RunConfig | None = None
    learners: list[LearnerDocument]
    bootstrap_seeds: list[int]
    selection_mask: list[int]
    normalization: NormalizationDocument
