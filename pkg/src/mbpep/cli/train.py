"""``mbpep train``: run the full pipeline and write model and report."""

from pathlib import Path
from typing import Any

import click

from mbpep.cli.dependencies import build_run_config, get_pipeline_service, resolve_threads
from mbpep.cli.options import collect_overrides, config_options


@click.command("train")
@config_options
@click.option(
    "--out",
    type=click.Path(path_type=Path, dir_okay=False),
    default=None,
    help="Model file (default: mbpep-model.json).",
)
@click.option(
    "--report-out",
    type=click.Path(path_type=Path, dir_okay=False),
    default=None,
    help="Report file (default: model path with .report.json).",
)
@click.option(
    "--trace-out",
    type=click.Path(path_type=Path, dir_okay=False),
    default=None,
    help="Per-sample test-split interval CSV.",
)
@click.option(
    "--with-timings",
    is_flag=True,
    default=False,
    help="Include wall-clock fields in the report.",
)
def train(
    config_path: Path | None,
    out: Path | None,
    report_out: Path | None,
    trace_out: Path | None,
    with_timings: bool,
    **params: Any,
) -> None:
    """Train, prune and evaluate an ensemble."""
    overrides = collect_overrides(params)
    overrides.update(
        {
            "output.model_path": str(out) if out else None,
            "output.report_path": str(report_out) if report_out else None,
            "output.trace_path": str(trace_out) if trace_out else None,
            "output.include_timings": True if with_timings else None,
        }
    )
    config = build_run_config(config_path, overrides)
    threads = resolve_threads(params.get("threads"), config)

    outcome = get_pipeline_service().train(config, threads=threads)

    report = outcome.report
    click.echo(f"model\t{config.output.model_path}")
    click.echo(f"report\t{config.output.resolved_report_path()}")
    if config.output.trace_path is not None:
        click.echo(f"trace\t{config.output.trace_path}")
    click.echo(f"ensemble_size\t{outcome.pool.ensemble_size}/{outcome.pool.size}")
    for label, result in (("test", report.test), ("test_unpruned", report.test_unpruned)):
        metrics = result.metrics
        click.echo(
            f"{label}\tpicp_hard={metrics.picp_hard:.4f}\t"
            f"mpiw_all={metrics.mpiw_all:.4f}\tloss_mbpep={metrics.loss_mbpep:.4f}"
        )
