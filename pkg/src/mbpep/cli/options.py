"""Click options shared by the train and bench commands.

Each option maps onto one dotted key of the run configuration; unset options
are None and leave the config document untouched.
"""

from collections.abc import Callable
from pathlib import Path
from typing import Any, TypeVar

import click

from mbpep.schemas.config import Activation, Generator, ObjectiveSplit, SelectionRule

F = TypeVar("F", bound=Callable[..., Any])

# option parameter name -> run-config key
OVERRIDE_KEYS: dict[str, str] = {
    "seed": "seed",
    "threads": "threads",
    "generator": "data.generator",
    "data_csv": "data.csv_path",
    "target_column": "data.target_column",
    "n": "data.n",
    "confidence": "loss.confidence",
    "penalty_c": "loss.penalty_c",
    "softness": "loss.softness",
    "pool_size": "train.pool_size",
    "epochs": "train.epochs",
    "batch_size": "train.batch_size",
    "hidden": "train.hidden_dims",
    "activation": "train.activation",
    "learning_rate": "train.optimizer.learning_rate",
    "selection_rule": "prune.selection_rule",
    "objective_split": "prune.objective_split",
}


def parse_int_list(
    _ctx: click.Context, param: click.Parameter, value: str | None
) -> list[int] | None:
    """Click callback turning ``"5,10,20"`` into ``[5, 10, 20]``."""
    if value is None:
        return None
    try:
        items = [int(part) for part in value.split(",") if part.strip()]
    except ValueError as exc:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}") from exc
    if not items:
        raise click.BadParameter("expected at least one integer", param=param)
    return items


def config_options(func: F) -> F:
    """Options every config-driven command accepts."""
    decorators = [
        click.option(
            "--config",
            "config_path",
            type=click.Path(path_type=Path, dir_okay=False),
            default=None,
            help="TOML run-config document.",
        ),
        click.option("--seed", type=click.IntRange(min=0), default=None, help="Base seed."),
        click.option(
            "--threads",
            type=click.IntRange(min=1),
            default=None,
            help="Worker threads (default: MBPEP_THREADS or 1).",
        ),
        click.option(
            "--generator",
            type=click.Choice([g.value for g in Generator]),
            default=None,
            help="Synthetic data generator.",
        ),
        click.option(
            "--data-csv",
            type=click.Path(path_type=Path, dir_okay=False),
            default=None,
            help="CSV dataset (overrides the generator).",
        ),
        click.option("--target-column", default=None, help="CSV target column name."),
        click.option("--n", type=click.IntRange(min=1), default=None, help="Generated samples."),
        click.option("--confidence", type=float, default=None, help="Required coverage."),
        click.option("--penalty-c", type=float, default=None, help="Coverage penalty c."),
        click.option("--softness", type=float, default=None, help="Soft indicator steepness."),
        click.option("--pool-size", type=click.IntRange(min=1), default=None),
        click.option("--epochs", type=click.IntRange(min=0), default=None),
        click.option("--batch-size", type=click.IntRange(min=1), default=None),
        click.option(
            "--hidden",
            default=None,
            callback=parse_int_list,
            help="Hidden layer widths, e.g. 100 or 64,64.",
        ),
        click.option(
            "--activation",
            type=click.Choice([a.value for a in Activation]),
            default=None,
        ),
        click.option("--learning-rate", type=float, default=None),
        click.option(
            "--selection-rule",
            type=click.Choice([r.value for r in SelectionRule]),
            default=None,
        ),
        click.option(
            "--objective-split",
            type=click.Choice([s.value for s in ObjectiveSplit]),
            default=None,
        ),
        click.option(
            "--no-prune",
            is_flag=True,
            default=False,
            help="Skip pruning (keep every learner).",
        ),
        click.option(
            "--raw-bounds",
            is_flag=True,
            default=False,
            help="Use two independent output heads instead of lower + softplus.",
        ),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


def collect_overrides(params: dict[str, Any]) -> dict[str, Any]:
    """Dotted-key overrides from the shared option values."""
    overrides = {key: params.get(name) for name, key in OVERRIDE_KEYS.items()}
    if overrides["data.csv_path"] is not None:
        overrides["data.csv_path"] = str(overrides["data.csv_path"])
    if params.get("no_prune"):
        overrides["prune.enabled"] = False
    if params.get("raw_bounds"):
        overrides["train.bound_mode"] = "raw"
    return overrides
