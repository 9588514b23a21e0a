"""``mbpep eval``: score a stored model without training."""

from pathlib import Path

import click

from mbpep.cli.dependencies import get_pipeline_service


@click.command("eval")
@click.option(
    "--model",
    "model_path",
    type=click.Path(path_type=Path, dir_okay=False),
    required=True,
    help="Model file written by train.",
)
@click.option(
    "--data",
    "data_path",
    type=click.Path(path_type=Path, dir_okay=False),
    default=None,
    help="CSV to evaluate on (default: the stored test split).",
)
@click.option(
    "--trace-out",
    type=click.Path(path_type=Path, dir_okay=False),
    default=None,
    help="Per-sample interval CSV.",
)
@click.option(
    "--out",
    type=click.Path(path_type=Path, dir_okay=False),
    default=None,
    help="Report file; without it the report is printed.",
)
@click.option("--with-timings", is_flag=True, default=False)
def evaluate(
    model_path: Path,
    data_path: Path | None,
    trace_out: Path | None,
    out: Path | None,
    with_timings: bool,
) -> None:
    """Evaluate a trained ensemble."""
    report = get_pipeline_service().evaluate_model(
        model_path,
        data_path=data_path,
        trace_path=trace_out,
        report_path=out,
        include_timings=with_timings,
    )
    if out is None:
        click.echo(report.model_dump_json(indent=2))
        return
    metrics = report.result.metrics
    click.echo(f"report\t{out}")
    click.echo(
        f"{report.result.split}\tpicp_hard={metrics.picp_hard:.4f}\t"
        f"mpiw_all={metrics.mpiw_all:.4f}\tloss_mbpep={metrics.loss_mbpep:.4f}"
    )
