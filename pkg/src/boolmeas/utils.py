"""
Utility helpers for boolmeas reports.

Reports are pandas DataFrames of strings: rationals are always written as
num/den so tables and CSV files compare exactly.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence, Union

import pandas as pd

PathLike = Union[str, Path]


def format_rational(q: Fraction) -> str:
    """'num/den', including '0/1' and '1/1'."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _cell(value: Any) -> Any:
    if isinstance(value, Fraction):
        return format_rational(value)
    if value is None:
        return ""
    if isinstance(value, (bool, int, str)):
        return value
    return str(value)


def build_frame(rows: Iterable[Mapping[str, Any]], columns: Sequence[str]) -> pd.DataFrame:
    """One row per mapping; Fractions become num/den strings, other objects their str()."""
    records = [{column: _cell(row.get(column)) for column in columns} for row in rows]
    return pd.DataFrame.from_records(records, columns=list(columns))


def render_frame(frame: pd.DataFrame, output_format: str) -> str:
    """
    Render a report frame as a fixed-width table or CSV.

    Parameters
    ----------
    frame : pandas.DataFrame
        Report rows.

    output_format : str
        'table' or 'csv'.
    """
    if output_format == "csv":
        return frame.to_csv(index=False)
    if frame.empty:
        return "(no rows)\n"
    return frame.to_string(index=False) + "\n"


def save_report(text: str, filepath: PathLike) -> Path:
    """
    Write a rendered report to disk.

    Parameters
    ----------
    text : str
        Report body as printed on standard output.

    filepath : str or Path
        Output file path.

    Returns
    -------
    Path
        The resolved output path.
    """

    path = Path(filepath).expanduser().resolve()

    # Ensure parent directory exists
    path.parent.mkdir(parents=True, exist_ok=True)

    path.write_text(text, encoding="utf-8")

    return path
