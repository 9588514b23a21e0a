"""``mbpep bench``: repeated runs across pool sizes."""

from pathlib import Path
from typing import Any

import click

from mbpep.cli.dependencies import (
    build_run_config,
    get_bench_service,
    resolve_threads,
)
from mbpep.cli.options import collect_overrides, config_options, parse_int_list
from mbpep.repositories import ReportRepository
from mbpep.services.bench import DEFAULT_POOL_SIZES, format_summary


@click.command("bench")
@config_options
@click.option(
    "--pool-sizes",
    default=",".join(str(size) for size in DEFAULT_POOL_SIZES),
    show_default=True,
    callback=parse_int_list,
    help="Comma-separated pool sizes.",
)
@click.option("--repeats", type=click.IntRange(min=1), default=5, show_default=True)
@click.option(
    "--out",
    type=click.Path(path_type=Path, dir_okay=False),
    default=None,
    help="Bench report file.",
)
def bench(
    config_path: Path | None,
    pool_sizes: list[int],
    repeats: int,
    out: Path | None,
    **params: Any,
) -> None:
    """Run the pipeline REPEATS times per pool size and summarize."""
    params.pop("pool_size", None)
    config = build_run_config(config_path, collect_overrides(params))
    threads = resolve_threads(params.get("threads"), config)

    report = get_bench_service().run(config, pool_sizes, repeats, threads=threads)

    if out is not None:
        ReportRepository().save(report, out)
        click.echo(f"report\t{out}")
    for line in format_summary(report):
        click.echo(line)
