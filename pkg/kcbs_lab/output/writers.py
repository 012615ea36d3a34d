"""
CSV and JSON serialization for the CLI

Floats are always printed with six decimals so identical runs produce byte-identical output
"""

import csv
import json
import math
from enum import Enum
from pathlib import Path
from typing import IO, Any, Iterable

from kcbs_lab import __version__

FLOAT_DECIMALS = 6

Record = dict[str, Any]


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


def format_float(value: float) -> str:
    """Fixed six-decimal rendering, with -0.000000 folded into 0.000000"""
    if not math.isfinite(value):
        raise ValueError(f"Cannot serialize non-finite value {value}")
    text = f"{value:.{FLOAT_DECIMALS}f}"
    return text[1:] if text.startswith("-") and float(text) == 0 else text


def _csv_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    if value is None:
        return ""
    if isinstance(value, Enum):
        return str(value.value)
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, float):
        # Round-trip through the fixed rendering so floats serialize identically across runs
        return float(format_float(value))
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {key: _json_value(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(item) for item in value]
    return value


def write_csv(records: list[Record], stream: IO[str], columns: Iterable[str] | None = None):
    """
    Writes records as CSV with a header row and "\\n" line endings
    Columns default to the keys of the first record
    """
    header = list(columns) if columns is not None else list(records[0].keys()) if records else []
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for record in records:
        writer.writerow([_csv_cell(record.get(column)) for column in header])


def write_json(subcommand: str, parameters: Record, records: list[Record], stream: IO[str]):
    """
    Writes a single object: {"meta": {subcommand, parameters, version}, "data": [...]}
    """
    document = {
        "meta": {
            "subcommand": subcommand,
            "parameters": _json_value(parameters),
            "version": __version__,
        },
        "data": [_json_value(record) for record in records],
    }
    stream.write(json.dumps(document, indent=2))
    stream.write("\n")


def emit(
    subcommand: str,
    parameters: Record,
    records: list[Record],
    output_format: OutputFormat,
    stream: IO[str],
    output_path: Path | None = None,
):
    """
    Serializes the records to the output path if given, otherwise to the stream
    """

    def _write(target: IO[str]):
        if output_format == OutputFormat.JSON:
            write_json(subcommand, parameters, records, target)
        else:
            write_csv(records, target)

    if output_path is None:
        _write(stream)
        return

    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, "w", encoding="utf-8", newline="") as f:
        _write(f)
