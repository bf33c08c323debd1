"""Bit-stable CSV/JSON writers: fixed columns, 17 significant digits, LF, UTF-8."""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


def format_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return "" if v is None else str(v)


def csv_text(rows: Iterable[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([format_value(row.get(c)) for c in columns])
    return buf.getvalue()


def _json_value(v) -> str:
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        f = float(v)
        # JSON has no inf/nan literals; mirror the CSV spelling as strings
        return format(f, ".17g") if math.isfinite(f) else json.dumps(format(f, ".17g"))
    if v is None:
        return "null"
    return json.dumps(str(v), ensure_ascii=False)


def json_text(payload: dict) -> str:
    return _json_value(payload) + "\n"


def write_text(path: Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def emit_csv(path: Path, rows: Iterable[dict], columns: Sequence[str]) -> Path:
    return write_text(path, csv_text(rows, columns))


def emit_json(path: Path, payload: dict) -> Path:
    return write_text(path, json_text(payload))


def table(rows: Iterable[dict], columns: Sequence[str]) -> list[dict]:
    """Rows restricted to ``columns`` in order (the JSON mirror of a CSV file)."""
    return [{c: row.get(c) for c in columns} for row in rows]
