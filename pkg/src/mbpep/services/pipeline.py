"""End-to-end training pipeline and stored-model evaluation.

One run loads the data, splits and normalizes it, trains the learner pool
on bootstrap resamples, prunes it on the objective split, and evaluates the
pruned ensemble next to the unpruned one.

Example::

    service = PipelineService(ModelRepository(), ReportRepository())
    outcome = service.train(RunConfig(), threads=1)
    print(outcome.report.test.metrics.picp_hard)
"""

import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from mbpep.core import get_logger, get_settings, run_context
from mbpep.core.exceptions import DataError
from mbpep.data.csv_io import load_csv, save_trace
from mbpep.data.dataset import Dataset, NormParams
from mbpep.data.generators import gen_cubic, gen_exp
from mbpep.data.normalization import denormalize, fit_normalization, normalize
from mbpep.data.splitting import split
from mbpep.ensemble.evaluation import evaluate, fused_batch, original_unit_batch
from mbpep.ensemble.pool import EnsemblePool
from mbpep.ensemble.pruning import ParetoArchive, SubsetEvaluator, pareto_prune
from mbpep.ensemble.training import derive_learner_seeds, train_pool
from mbpep.repositories.model import ModelRepository, StoredModel
from mbpep.repositories.report import ReportRepository
from mbpep.schemas.config import Generator, LossConfig, ObjectiveSplit, RunConfig
from mbpep.schemas.report import (
    ArchiveEntryReport,
    EvalCommandReport,
    LearnerFailureReport,
    PruneReport,
    TrainReport,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class PreparedData:
    """Normalized splits of one data source.

    Attributes:
        train: Training split; normalization statistics come from it.
        valid: Validation split.
        test: Test split.
        norm: Parameters fitted on the raw training split.
        source: Human-readable description of where the data came from.
    """

    train: Dataset
    valid: Dataset
    test: Dataset
    norm: NormParams
    source: str


@dataclass
class PipelineOutcome:
    """Everything one pipeline run produced.

    Attributes:
        model: Trained (and possibly pruned) ensemble plus normalization.
        report: Train report document.
        data: Splits the run used.
        archive: Final Pareto archive, or None when pruning was skipped.
    """

    model: StoredModel
    report: TrainReport
    data: PreparedData
    archive: ParetoArchive | None = None

    @property
    def pool(self) -> EnsemblePool:
        """The trained pool."""
        return self.model.pool


def load_source(config: RunConfig) -> tuple[Dataset, str]:
    """Raw dataset named by ``config.data`` and a description of it.

    A CSV path takes precedence over the synthetic generator.
    """
    data = config.data
    if data.csv_path is not None:
        return load_csv(data.csv_path, data.target_column), str(data.csv_path)
    x_range = data.x_range()
    if data.generator is Generator.EXP:
        dataset = gen_exp(data.n, rate=data.rate, x_range=x_range, seed=config.data_seed())
    else:
        dataset = gen_cubic(
            data.n, noise_std=data.noise_std, x_range=x_range, seed=config.data_seed()
        )
    return dataset, f"generator:{data.generator.value}"


def prepare_data(
    config: RunConfig,
    dataset: Dataset | None = None,
    source: str | None = None,
) -> PreparedData:
    """Split ``dataset`` (loaded from ``config`` if omitted) and normalize it.

    Min-max statistics are fitted on the training split only.
    """
    if dataset is None:
        dataset, source = load_source(config)
    train_raw, valid_raw, test_raw = split(dataset, config.split, config.split_seed())
    norm = fit_normalization(train_raw, include_targets=config.data.normalize_targets)
    return PreparedData(
        train=normalize(train_raw, params=norm),
        valid=normalize(valid_raw, params=norm),
        test=normalize(test_raw, params=norm),
        norm=norm,
        source=source or "dataset",
    )


class PipelineService:
    """Runs training pipelines and evaluates stored models.

    Example::

        service = PipelineService(ModelRepository(), ReportRepository())
        outcome = service.run(config)
        service.evaluate_model(Path("model.json"))
    """

    def __init__(
        self,
        model_repo: ModelRepository,
        report_repo: ReportRepository,
    ) -> None:
        """Initialize the pipeline service.

        Args:
            model_repo: Repository persisting trained ensembles.
            report_repo: Repository persisting report documents.
        """
        self.model_repo = model_repo
        self.report_repo = report_repo

    def run(
        self,
        config: RunConfig,
        threads: int | None = None,
        include_timings: bool | None = None,
        data: PreparedData | None = None,
    ) -> PipelineOutcome:
        """Train, prune and evaluate without writing any file.

        Args:
            config: Validated run configuration.
            threads: Worker threads for training; defaults to the config,
                then to `Settings.threads`.
            include_timings: Put wall-clock fields in the report; defaults to
                ``config.output.include_timings``.
            data: Pre-split data; loaded from ``config`` when omitted.

        Returns:
            The run outcome with its train report.
        """
        workers = threads or config.threads or get_settings().threads
        timings = config.output.include_timings if include_timings is None else include_timings
        with run_context(seed=config.seed, pool_size=config.train.pool_size):
            return self._run(config, workers, timings, data)

    def _run(
        self,
        config: RunConfig,
        workers: int,
        timings: bool,
        data: PreparedData | None,
    ) -> PipelineOutcome:
        started = time.perf_counter()

        # Step 1: Load, split and normalize
        prepared = data or prepare_data(config)

        # Step 2: Train every learner on its own bootstrap resample
        seeds = derive_learner_seeds(config.seed, config.train.pool_size)
        pool = train_pool(prepared.train, config.train, seeds, threads=workers)

        # Step 3: Prune on the objective split
        archive: ParetoArchive | None = None
        prune_report: PruneReport | None = None
        if config.prune.enabled:
            objective_data = (
                prepared.train
                if config.prune.objective_split is ObjectiveSplit.TRAIN
                else prepared.valid
            )
            evaluator = SubsetEvaluator(
                pool, objective_data, config.loss, config.prune.objective_loss
            )
            archive, mask = pareto_prune(
                pool,
                objective_data,
                config.prune,
                config.loss,
                seed=config.prune_seed(),
                evaluator=evaluator,
            )
            chosen = evaluator.entry(mask)
            prune_report = PruneReport(
                iterations_run=archive.iterations_run,
                selection_rule=config.prune.selection_rule.value,
                front=[
                    ArchiveEntryReport(mask=list(e.mask), f_value=e.f_value, size=e.size)
                    for e in archive.front()
                ],
                chosen_mask=list(chosen.mask),
                f_chosen=chosen.f_value,
                f_full=evaluator(np.ones(pool.size, dtype=bool)),
            )
        train_seconds = time.perf_counter() - started

        # Step 4: Evaluate the median-voted ensemble, pruned and unpruned
        validation = evaluate(pool, prepared.valid, config.loss, "valid", timings)
        test = evaluate(pool, prepared.test, config.loss, "test", timings)
        unpruned = evaluate(
            pool.with_mask(np.ones(pool.size, dtype=bool)),
            prepared.test,
            config.loss,
            "test_unpruned",
            timings,
        )

        model = StoredModel(
            pool=pool,
            norm=prepared.norm,
            feature_names=prepared.train.feature_names,
            target_name=prepared.train.target_name,
            run_config=config,
        )
        report = TrainReport(
            config=config,
            bootstrap_seeds=list(pool.bootstrap_seeds),
            failures=[
                LearnerFailureReport(index=f.index, message=f.message) for f in pool.failures
            ],
            pruning=prune_report,
            validation=validation,
            test=test,
            test_unpruned=unpruned,
            train_seconds=train_seconds if timings else None,
        )
        logger.info(
            "pipeline_run_complete",
            source=prepared.source,
            ensemble_size=pool.ensemble_size,
            test_picp=test.metrics.picp_hard,
            test_mpiw=test.metrics.mpiw_all,
            train_seconds=train_seconds,
        )
        return PipelineOutcome(model=model, report=report, data=prepared, archive=archive)

    def train(
        self,
        config: RunConfig,
        threads: int | None = None,
    ) -> PipelineOutcome:
        """Run the pipeline and write the model, report and optional trace."""
        outcome = self.run(config, threads=threads)
        output = config.output
        self.model_repo.save(outcome.model, output.model_path)
        self.report_repo.save(outcome.report, output.resolved_report_path())
        if output.trace_path is not None:
            write_trace(outcome.pool, outcome.data.test, output.trace_path)
        return outcome

    def evaluate_model(
        self,
        model_path: Path,
        data_path: Path | None = None,
        trace_path: Path | None = None,
        report_path: Path | None = None,
        include_timings: bool = False,
    ) -> EvalCommandReport:
        """Evaluate a stored model without training.

        Without ``data_path`` the test split of the stored run configuration
        is rebuilt, giving the same numbers as the train report.

        Raises:
            DataError: If the model was stored without its run configuration
                and no dataset is given, or column counts differ.
        """
        stored = self.model_repo.load(model_path)
        dataset, source = self._eval_dataset(stored, data_path)

        result = evaluate(stored.pool, dataset, _loss_config(stored), "test", include_timings)
        report = EvalCommandReport(
            model_path=str(model_path),
            data_source=source,
            result=result,
        )
        if trace_path is not None:
            write_trace(stored.pool, dataset, trace_path)
        if report_path is not None:
            self.report_repo.save(report, report_path)
        return report

    def _eval_dataset(self, stored: StoredModel, data_path: Path | None) -> tuple[Dataset, str]:
        if data_path is None:
            if stored.run_config is None:
                raise DataError(
                    "Model has no stored run configuration; pass a dataset",
                )
            return prepare_data(stored.run_config).test, "stored_test_split"

        target = stored.target_name
        raw = load_csv(data_path)
        if target in raw.feature_names:
            raw = load_csv(data_path, target)
        if raw.n_features != stored.pool.input_dim:
            raise DataError(
                "Dataset column count differs from the model input width",
                details={
                    "path": str(data_path),
                    "features": raw.n_features,
                    "expected": stored.pool.input_dim,
                },
            )
        return normalize(raw, params=stored.norm), str(data_path)


def write_trace(pool: EnsemblePool, dataset: Dataset, path: Path) -> None:
    """Write per-sample (features, y, y_lower, y_upper) rows in original units."""
    batch = fused_batch(pool, dataset)
    save_trace(denormalize(dataset), original_unit_batch(batch, dataset), path)
    logger.info("trace_written", path=str(path), rows=len(dataset))


def _loss_config(stored: StoredModel) -> LossConfig:
    if stored.run_config is not None:
        return stored.run_config.loss
    return stored.pool.train_config.loss

