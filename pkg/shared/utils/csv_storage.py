"""CSV storage utilities for solver and bounds output.

Every table is written with full round-trip precision and LF line endings,
so two runs with the same configuration produce byte-identical files.
"""

from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd

from shared.logging import get_logger

logger = get_logger("csv_storage")

FLOAT_FORMAT = "%.17g"


def ensure_directory(path: Path) -> Path:
    """Ensure a directory exists, creating it if necessary.

    Args:
        path: Directory path to ensure exists

    Returns:
        The same path for chaining
    """
    path.mkdir(parents=True, exist_ok=True)
    return path


def build_frame(columns: dict[str, np.ndarray]) -> pd.DataFrame:
    """Assemble equal-length columns into a DataFrame, keeping column order.

    NaN entries are written as empty fields.
    """
    lengths = {len(values) for values in columns.values()}
    if len(lengths) > 1:
        raise ValueError(f"Columns have different lengths: {sorted(lengths)}")
    return pd.DataFrame({name: np.asarray(values, dtype=float) for name, values in columns.items()})


def save_csv(
    filepath: Path,
    data: Union[dict, pd.DataFrame],
    float_format: str = FLOAT_FORMAT,
) -> Path:
    """Save a table to a CSV file.

    Args:
        filepath: Full path to save file
        data: DataFrame, or a dict of equal-length columns
        float_format: printf-style float format

    Returns:
        Path to saved file
    """
    filepath = Path(filepath)
    ensure_directory(filepath.parent)

    df = data if isinstance(data, pd.DataFrame) else build_frame(data)
    df.to_csv(
        filepath,
        index=False,
        float_format=float_format,
        na_rep="",
        lineterminator="\n",
        encoding="utf-8",
    )
    logger.debug(f"Saved CSV to {filepath} ({len(df)} rows)")
    return filepath


def load_csv(filepath: Path) -> Optional[pd.DataFrame]:
    """Load a CSV file written by save_csv().

    Args:
        filepath: Full path to load file

    Returns:
        DataFrame, or None if the file doesn't exist
    """
    filepath = Path(filepath)
    if not filepath.exists():
        return None
    return pd.read_csv(filepath, float_precision="round_trip")
