"""Pydantic schemas for report documents ("mbpep-report/1").

Numbers are emitted as JSON floats at full 64-bit precision. Wall-clock
fields are optional so reproducible runs can leave them out.
"""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from mbpep.schemas.config import RunConfig

REPORT_VERSION = "mbpep-report/1"


class _Document(BaseModel):
    model_config = ConfigDict(extra="forbid")


class LossReport(_Document):
    """Every interval metric and loss for one batch.

    Attributes:
        picp_hard: Fraction of targets inside their interval.
        picp_soft: Mean soft indicator.
        mpiw_all: Mean width over all samples.
        mpiw_captured: Mean of width times hard indicator (divisor N).
        mpiw_mbpep_soft: Mean of width times soft indicator.
        loss_mbpep: Width term plus hinge coverage penalty.
        loss_lube: Exponential-penalty baseline; None when all widths are zero.
    """

    picp_hard: float = Field(ge=0.0, le=1.0)
    picp_soft: float = Field(ge=0.0, le=1.0)
    mpiw_all: float
    mpiw_captured: float
    mpiw_mbpep_soft: float
    loss_mbpep: float
    loss_lube: float | None


class EvalReport(_Document):
    """Evaluation of a (pruned or unpruned) ensemble on one dataset."""

    split: str
    n_samples: int
    metrics: LossReport
    ensemble_size: int
    pool_size: int
    selected_indices: list[int]
    prediction_seconds: float | None = None
    lube_normalizer: Literal["batch_mean_width"] = "batch_mean_width"
    mpiw_all_original: float | None = None
    mpiw_captured_original: float | None = None


class ArchiveEntryReport(_Document):
    """One non-dominated subset found by the pruning search."""

    mask: list[int]
    f_value: float
    size: int


class PruneReport(_Document):
    """Outcome of the Pareto pruning step."""

    iterations_run: int
    selection_rule: str
    front: list[ArchiveEntryReport]
    chosen_mask: list[int]
    f_chosen: float
    f_full: float


class LearnerFailureReport(_Document):
    """A learner dropped from the pool because training failed."""

    index: int
    message: str


class TrainReport(_Document):
    """Document written by ``mbpep train``."""

    schema_version: Literal["mbpep-report/1"] = REPORT_VERSION
    kind: Literal["train"] = "train"
    config: RunConfig
    bootstrap_seeds: list[int]
    failures: list[LearnerFailureReport]
    pruning: PruneReport | None
    validation: EvalReport
    test: EvalReport
    test_unpruned: EvalReport
    train_seconds: float | None = None


class EvalCommandReport(_Document):
    """Document written by ``mbpep eval``."""

    schema_version: Literal["mbpep-report/1"] = REPORT_VERSION
    kind: Literal["eval"] = "eval"
    model_path: str
    data_source: str
    result: EvalReport


class MetricSummary(_Document):
    """Mean and standard error of one metric across repeated runs.

    ``stderr`` is "NA" when fewer than two runs succeeded.
    """

    mean: float
    stderr: float | Literal["NA"]
    runs: int

    def format(self, digits: int = 2) -> str:
        """Render as ``mean±stderr``."""
        err = "NA" if self.stderr == "NA" else f"{self.stderr:.{digits}f}"
        return f"{self.mean:.{digits}f}±{err}"


class BenchRunRecord(_Document):
    """Pruned and unpruned test evaluations of one bench run."""

    pool_size: int
    seed: int
    pruned: EvalReport
    unpruned: EvalReport


class BenchFailure(_Document):
    """A bench run that raised and was excluded from the aggregates."""

    pool_size: int
    seed: int
    message: str


class BenchPoolSummary(_Document):
    """Aggregates for one pool size."""

    pool_size: int
    runs: int
    failures: int
    pruned: dict[str, MetricSummary]
    unpruned: dict[str, MetricSummary]


class BenchReport(_Document):
    """Document written by ``mbpep bench``."""

    schema_version: Literal["mbpep-report/1"] = REPORT_VERSION
    kind: Literal["bench"] = "bench"
    config: RunConfig
    repeats: int
    pool_sizes: list[int]
    runs: list[BenchRunRecord]
    summaries: list[BenchPoolSummary]
    failures: list[BenchFailure]
    failure_count: int
