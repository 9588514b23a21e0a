"""Command-line entry point.

This module creates the click group, registers the commands and maps
library exceptions to exit codes.

Run with:
    mbpep train --config run.toml
    python -m mbpep bench --pool-sizes 5,10 --repeats 3
"""

import click

from mbpep import __version__
from mbpep.cli.bench import bench
from mbpep.cli.data import gen_data
from mbpep.cli.evaluate import evaluate
from mbpep.cli.train import train
from mbpep.core import (
    ConfigurationError,
    DataError,
    MbpepError,
    ModelFormatError,
    get_logger,
    setup_logging,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_RUNTIME = 4


def exit_code_for(exc: MbpepError) -> int:
    """Exit status for a library error."""
    if isinstance(exc, ConfigurationError):
        return EXIT_CONFIG
    if isinstance(exc, (DataError, ModelFormatError)):
        return EXIT_DATA
    return EXIT_RUNTIME


class MbpepGroup(click.Group):
    """Click group that turns `MbpepError` into a logged message and exit code."""

    def invoke(self, ctx: click.Context) -> object:
        try:
            return super().invoke(ctx)
        except MbpepError as exc:
            logger = get_logger(__name__)

            logger.error(
                "command_failed",
                reason=exc.message,
                exception_type=type(exc).__name__,
                command=ctx.invoked_subcommand,
                details=exc.details,
            )
            click.echo(f"error: {exc.message}", err=True)
            for item in exc.details.get("errors", []):
                line = f"{item['loc']}: {item['msg']}" if isinstance(item, dict) else item
                click.echo(f"  {line}", err=True)
            ctx.exit(exit_code_for(exc))


@click.group(cls=MbpepGroup)
@click.version_option(__version__, prog_name="mbpep")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"], case_sensitive=False),
    default=None,
    help="Override MBPEP_LOG_LEVEL.",
)
def cli(log_level: str | None) -> None:
    """Prediction intervals from pruned neural-network ensembles."""
    setup_logging(log_level)


cli.add_command(gen_data)
cli.add_command(train)
cli.add_command(evaluate)
cli.add_command(bench)


def run() -> None:
    """Console-script entry point."""
    cli(prog_name="mbpep")
