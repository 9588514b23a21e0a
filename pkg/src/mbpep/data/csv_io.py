"""CSV ingestion and emission.

Dialect: comma-separated, mandatory header row, "." decimals. Rows are
numbered by file line with the header on row 1; columns are 1-based.
Trailing blank lines are ignored; a blank line anywhere else is an error,
so row numbers always match file lines.

Example::

    dataset = load_csv(Path("housing.csv"), target_column="price")
    save_csv(gen_cubic(500, seed=1), Path("cubic.csv"))
"""

from io import StringIO
from pathlib import Path

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from mbpep.core import get_logger
from mbpep.core.exceptions import DataError, NotFoundError
from mbpep.data.dataset import Dataset
from mbpep.piloss.batch import IntervalBatch

logger = get_logger(__name__)

_HEADER_LINES = 1


def load_csv(path: Path, target_column: str | None = None) -> Dataset:
    """Parse a numeric CSV into a `Dataset`.

    Args:
        path: File to read.
        target_column: Name of the target column; None selects the last one.

    Returns:
        Dataset whose features are every other column, in file order.

    Raises:
        NotFoundError: If the file is missing.
        DataError: On malformed rows, interior blank lines, missing or
            non-numeric cells, an unknown target column, or an empty body.
    """
    if not path.is_file():
        raise NotFoundError("CSV file not found", details={"path": str(path)})

    text = _read_text(path)
    try:
        frame = pd.read_csv(
            StringIO(text),
            sep=",",
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=True,
        )
    except pd.errors.EmptyDataError as exc:
        raise DataError("CSV file is empty", details={"path": str(path)}) from exc
    except pd.errors.ParserError as exc:
        raise DataError(
            "Malformed CSV row", details={"path": str(path), "error": str(exc)}
        ) from exc

    if frame.shape[0] == 0:
        raise DataError("CSV has no data rows", details={"path": str(path)})
    if frame.shape[1] < 2:
        raise DataError(
            "CSV needs at least one feature and one target column",
            details={"path": str(path), "columns": list(frame.columns)},
        )

    numeric = _parse_numeric(frame, path)

    columns = [str(name) for name in frame.columns]
    if target_column is None:
        target_index = len(columns) - 1
    elif target_column in columns:
        target_index = columns.index(target_column)
    else:
        raise DataError(
            "Target column not found",
            details={"path": str(path), "target_column": target_column, "columns": columns},
        )

    feature_index = [i for i in range(len(columns)) if i != target_index]
    dataset = Dataset(
        features=numeric[:, feature_index],
        targets=numeric[:, target_index],
        feature_names=tuple(columns[i] for i in feature_index),
        target_name=columns[target_index],
    )
    logger.info(
        "csv_loaded",
        path=str(path),
        rows=len(dataset),
        features=dataset.n_features,
        target=dataset.target_name,
    )
    return dataset


def save_csv(dataset: Dataset, path: Path) -> None:
    """Write a dataset in the dialect `load_csv` reads (target column last).

    Raises:
        DataError: If the file cannot be written.
    """
    frame = pd.DataFrame(dataset.features, columns=list(dataset.feature_names))
    frame[dataset.target_name] = dataset.targets
    _write(frame, path)


def save_trace(
    dataset: Dataset,
    batch: IntervalBatch,
    path: Path,
) -> None:
    """Write per-sample (features, y, y_lower, y_upper) rows for plotting bands.

    Raises:
        DataError: If lengths differ or the file cannot be written.
    """
    if len(batch) != len(dataset):
        raise DataError(
            "Trace length differs from dataset length",
            details={"dataset": len(dataset), "batch": len(batch)},
        )
    frame = pd.DataFrame(dataset.features, columns=list(dataset.feature_names))
    frame[dataset.target_name] = batch.targets
    frame["y_lower"] = batch.lower
    frame["y_upper"] = batch.upper
    _write(frame, path)


def _read_text(path: Path) -> str:
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise DataError(
            "Cannot read CSV", details={"path": str(path), "error": str(exc)}
        ) from exc
    lines = text.splitlines()
    body_end = len(lines)
    while body_end and not lines[body_end - 1].strip():
        body_end -= 1
    for number, line in enumerate(lines[:body_end], start=1):
        if not line.strip():
            raise DataError(
                "Blank line inside CSV", details={"path": str(path), "row": number}
            )
    return text


def _parse_numeric(frame: pd.DataFrame, path: Path) -> NDArray[np.float64]:
    values = frame.apply(pd.to_numeric, errors="coerce").to_numpy(dtype=np.float64)
    bad = ~np.isfinite(values)
    if bad.any():
        row, col = (int(i) for i in np.argwhere(bad)[0])
        raw = frame.iat[row, col]
        raise DataError(
            "Non-numeric cell" if isinstance(raw, str) and raw.strip() else "Missing cell",
            details={
                "path": str(path),
                "row": row + _HEADER_LINES + 1,
                "column": col + 1,
                "value": None if pd.isna(raw) else str(raw),
            },
        )
    return values


def _write(frame: pd.DataFrame, path: Path) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, lineterminator="\n")
    except OSError as exc:
        raise DataError(
            "Cannot write CSV", details={"path": str(path), "error": str(exc)}
        ) from exc
