"""``mbpep gen-data``: write a synthetic dataset as CSV."""

from pathlib import Path

import click

from mbpep.cli.dependencies import build_run_config
from mbpep.data.csv_io import save_csv
from mbpep.schemas.config import Generator
from mbpep.services.pipeline import load_source


@click.command("gen-data")
@click.argument("generator", type=click.Choice([g.value for g in Generator]))
@click.option("--n", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option(
    "--out",
    type=click.Path(path_type=Path, dir_okay=False),
    required=True,
    help="Destination CSV.",
)
@click.option("--noise-std", type=float, default=None, help="cubic: Gaussian noise std.")
@click.option("--rate", type=float, default=None, help="exp: exponential noise rate.")
@click.option("--x-low", type=float, default=None, help="Lower end of the input range.")
@click.option("--x-high", type=float, default=None, help="Upper end of the input range.")
def gen_data(
    generator: str,
    n: int,
    seed: int,
    out: Path,
    noise_std: float | None,
    rate: float | None,
    x_low: float | None,
    x_high: float | None,
) -> None:
    """Sample GENERATOR (cubic or exp) and write it to --out."""
    config = build_run_config(
        None,
        {
            "seed": seed,
            "data.generator": generator,
            "data.n": n,
            "data.noise_std": noise_std,
            "data.rate": rate,
            "data.x_low": x_low,
            "data.x_high": x_high,
        },
    )
    dataset, _ = load_source(config)
    save_csv(dataset, out)
    click.echo(f"{out}\t{len(dataset)} rows")
