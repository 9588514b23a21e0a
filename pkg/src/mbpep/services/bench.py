"""Repeated-run benchmarks across pool sizes.

Run i of every pool size uses seed ``base_seed + i``. A run that raises is
logged, recorded as a failure and left out of the aggregates.

Example::

    bench = BenchService(PipelineService(ModelRepository(), ReportRepository()))
    report = bench.run(config, pool_sizes=[5, 10], repeats=3)
    for line in format_summary(report):
        print(line)
"""

import math

import numpy as np

from mbpep.core import get_logger, run_context
from mbpep.core.exceptions import ValidationError
from mbpep.schemas.config import RunConfig
from mbpep.schemas.report import (
    BenchFailure,
    BenchPoolSummary,
    BenchReport,
    BenchRunRecord,
    EvalReport,
    MetricSummary,
)
from mbpep.services.pipeline import PipelineService

logger = get_logger(__name__)

DEFAULT_POOL_SIZES = (5, 10, 20, 30)

SUMMARY_METRICS = (
    "loss_mbpep",
    "loss_lube",
    "picp_hard",
    "picp_soft",
    "mpiw_all",
    "mpiw_captured",
    "ensemble_size",
    "prediction_seconds",
)


def summarize(values: list[float]) -> MetricSummary:
    """Mean and standard error (sample std / sqrt(n)); "NA" below two runs.

    Raises:
        ValidationError: If ``values`` is empty.
    """
    if not values:
        raise ValidationError("Cannot summarize zero runs")
    array = np.asarray(values, dtype=np.float64)
    if array.size < 2:
        return MetricSummary(mean=float(array.mean()), stderr="NA", runs=1)
    stderr = float(array.std(ddof=1) / math.sqrt(array.size))
    return MetricSummary(mean=float(array.mean()), stderr=stderr, runs=int(array.size))


def metric_value(report: EvalReport, name: str) -> float | None:
    """One named metric of an evaluation; None when it is unavailable."""
    if name == "ensemble_size":
        return float(report.ensemble_size)
    if name == "prediction_seconds":
        return report.prediction_seconds
    value = getattr(report.metrics, name)
    return None if value is None else float(value)


def summarize_evals(reports: list[EvalReport]) -> dict[str, MetricSummary]:
    """Per-metric summaries over ``reports``, skipping unavailable values."""
    summaries: dict[str, MetricSummary] = {}
    for name in SUMMARY_METRICS:
        values = [v for v in (metric_value(r, name) for r in reports) if v is not None]
        if values:
            summaries[name] = summarize(values)
    return summaries


class BenchService:
    """Sweeps pool sizes and repeats over the training pipeline.

    Example::

        report = BenchService(pipeline).run(config, [5, 10], repeats=5)
    """

    def __init__(self, pipeline: PipelineService) -> None:
        """Initialize the bench service.

        Args:
            pipeline: Service running one train/prune/evaluate cycle.
        """
        self.pipeline = pipeline

    def run(
        self,
        config: RunConfig,
        pool_sizes: list[int] | None = None,
        repeats: int = 5,
        threads: int | None = None,
    ) -> BenchReport:
        """Run ``repeats`` pipelines for every pool size.

        Args:
            config: Base configuration; its seed is the base seed.
            pool_sizes: Pool sizes to sweep (default 5, 10, 20, 30).
            repeats: Runs per pool size.
            threads: Worker threads inside each run.

        Returns:
            Per-run records, aggregates and failures.

        Raises:
            ValidationError: If ``repeats`` or a pool size is below 1.
        """
        sizes = list(pool_sizes or DEFAULT_POOL_SIZES)
        if repeats < 1 or any(size < 1 for size in sizes):
            raise ValidationError(
                "Repeats and pool sizes must be positive",
                details={"repeats": repeats, "pool_sizes": sizes},
            )

        logger.info("bench_start", pool_sizes=sizes, repeats=repeats, base_seed=config.seed)

        records: list[BenchRunRecord] = []
        failures: list[BenchFailure] = []
        summaries: list[BenchPoolSummary] = []

        for size in sizes:
            size_records: list[BenchRunRecord] = []
            size_failures = 0
            for repeat in range(repeats):
                seed = config.seed + repeat
                run_config = _run_config(config, size, seed)
                try:
                    with run_context(repeat=repeat):
                        outcome = self.pipeline.run(
                            run_config, threads=threads, include_timings=True
                        )
                except Exception as exc:  # pylint: disable=broad-except
                    logger.error(
                        "bench_run_failed",
                        pool_size=size,
                        seed=seed,
                        error=str(exc),
                    )
                    failures.append(BenchFailure(pool_size=size, seed=seed, message=str(exc)))
                    size_failures += 1
                    continue
                size_records.append(
                    BenchRunRecord(
                        pool_size=size,
                        seed=seed,
                        pruned=outcome.report.test,
                        unpruned=outcome.report.test_unpruned,
                    )
                )

            summaries.append(
                BenchPoolSummary(
                    pool_size=size,
                    runs=len(size_records),
                    failures=size_failures,
                    pruned=summarize_evals([r.pruned for r in size_records]),
                    unpruned=summarize_evals([r.unpruned for r in size_records]),
                )
            )
            records.extend(size_records)

        logger.info(
            "bench_complete",
            runs=len(records),
            failed=len(failures),
        )
        return BenchReport(
            config=config,
            repeats=repeats,
            pool_sizes=sizes,
            runs=records,
            summaries=summaries,
            failures=failures,
            failure_count=len(failures),
        )


def format_summary(report: BenchReport, digits: int = 4) -> list[str]:
    """Text table of ``mean±stderr`` per pool size, pruned then unpruned."""
    columns = ("loss_mbpep", "picp_hard", "mpiw_all", "ensemble_size", "prediction_seconds")
    lines = ["pool_size\tvariant\truns\t" + "\t".join(columns)]
    for summary in report.summaries:
        for variant, metrics in (("pruned", summary.pruned), ("unpruned", summary.unpruned)):
            cells = [
                metrics[name].format(digits) if name in metrics else "NA" for name in columns
            ]
            lines.append(f"{summary.pool_size}\t{variant}\t{summary.runs}\t" + "\t".join(cells))
    if report.failure_count:
        lines.append(f"failed runs: {report.failure_count}")
    return lines


def _run_config(config: RunConfig, pool_size: int, seed: int) -> RunConfig:
    return config.model_copy(
        update={
            "seed": seed,
            "train": config.train.model_copy(update={"pool_size": pool_size}),
        }
    )
