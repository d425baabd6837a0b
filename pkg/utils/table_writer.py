"""
Result tables for the command-line front end
Deterministic JSON/CSV serialisation with atomic file writes
"""

import csv
import io
import json
import logging
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

logger = logging.getLogger(__name__)


@dataclass
class ResultTable:
    """Data class for one command's output"""
    command: str
    params: Dict[str, Any]
    columns: List[str]
    rows: List[List[Any]] = field(default_factory=list)

    def add_row(self, row: Sequence[Any]) -> None:
        if len(row) != len(self.columns):
            raise ValueError(f"Row has {len(row)} cells, table has {len(self.columns)} columns")
        self.rows.append([_plain(value) for value in row])

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "params": _finite_or_null(self.params),
            "columns": self.columns,
            "rows": _finite_or_null(self.rows),
        }
        return json.dumps(payload, indent=2, allow_nan=False) + "\n"

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\r\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_csv_cell(value) for value in row])
        return buffer.getvalue()

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        raise ValueError(f"Unknown output format: {fmt}")

    def write(self, fmt: str, path: Optional[str] = None) -> None:
        """
        Write the table to path atomically, or to stdout

        Args:
            fmt: "json" or "csv"
            path: Target file; None or "-" means stdout
        """
        text = self.render(fmt)
        if path is None or path == "-":
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        write_atomic(path, text)
        logger.info(f"Wrote {len(self.rows)} rows to {path}")


def write_atomic(path: str, text: str) -> None:
    """Temp file in the target directory, then rename over the target"""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with tempfile.NamedTemporaryFile(
        "w", dir=directory, delete=False, newline="", encoding="utf-8",
        prefix=".qscatter-", suffix=".tmp"
    ) as handle:
        handle.write(text)
        temp_name = handle.name
    try:
        os.replace(temp_name, path)
    except OSError:
        os.unlink(temp_name)
        raise


def _plain(value: Any) -> Any:
    # numpy scalars -> builtins so json and csv see plain numbers
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        return value.item()
    return value


def _finite_or_null(value: Any) -> Any:
    # NaN and infinities have no JSON literal
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {key: _finite_or_null(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite_or_null(item) for item in value]
    return value


def _csv_cell(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)
