"""
Deterministic CSV and JSON output of result tables.

No timestamps, host names or run-dependent data are written, so an
identical configuration produces byte-identical files.
"""

import csv
import io
import json
import logging
import math
from dataclasses import dataclass
from dataclasses import field
from pathlib import Path

logger = logging.getLogger(__name__)

DEFAULT_PRECISION = 17


@dataclass
class Table:
    """Rows of one command, with column names and run metadata."""

    command: str
    columns: list
    rows: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add_row(self, row):
        """Append a row given as a mapping or a sequence in column order."""
        if isinstance(row, dict):
            unknown = set(row) - set(self.columns)
            if unknown:
                raise KeyError(f"unknown columns {sorted(unknown)} for {self.command}")
            row = [row.get(name) for name in self.columns]
        elif len(row) != len(self.columns):
            raise ValueError(
                f"row has {len(row)} entries, table {self.command} has {len(self.columns)}"
            )
        self.rows.append(list(row))


def complex_fields(name, value):
    """Split a complex value into ``name_re`` and ``name_im`` entries."""
    value = complex(value)
    return {f"{name}_re": value.real, f"{name}_im": value.imag}


def round_float(value, precision=DEFAULT_PRECISION):
    """Round to ``precision`` significant digits."""
    if not math.isfinite(value):
        return value
    return float(f"{value:.{precision}g}")


def format_value(value, precision=DEFAULT_PRECISION):
    """Text of one CSV cell."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.{precision}g}"
    return str(value)


def _json_value(value, precision):
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            return str(value)
        return round_float(value, precision)
    if isinstance(value, dict):
        return {str(k): _json_value(v, precision) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v, precision) for v in value]
    # numpy scalars and the like
    if hasattr(value, "item"):
        return _json_value(value.item(), precision)
    return str(value)


def to_csv(table, precision=DEFAULT_PRECISION):
    """CSV text: header row, LF line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_value(_plain(v), precision) for v in row])
    return buffer.getvalue()


def to_json(table, precision=DEFAULT_PRECISION):
    """JSON text with sorted keys and floats rounded to ``precision`` digits."""
    document = {
        "command": table.command,
        "columns": list(table.columns),
        "rows": [_json_value(list(row), precision) for row in table.rows],
        "meta": _json_value(table.meta, precision),
    }
    return json.dumps(document, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _plain(value):
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        return value.item()
    return value


def render(table, fmt="csv", precision=DEFAULT_PRECISION):
    """Text of ``table`` in ``fmt`` (``csv`` or ``json``)."""
    if fmt == "csv":
        return to_csv(table, precision)
    if fmt == "json":
        return to_json(table, precision)
    raise ValueError(f"unknown output format {fmt!r}")


def write_table(table, path=None, fmt="csv", precision=DEFAULT_PRECISION, stream=None):
    """Write to ``path`` (UTF-8, LF), or to ``stream`` when no path is given."""
    text = render(table, fmt, precision)
    if path is None:
        stream.write(text)
        return None
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    logger.info("wrote %s (%d rows) to %s", table.command, len(table.rows), path)
    return path
