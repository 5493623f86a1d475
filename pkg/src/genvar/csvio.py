"""CSV ingestion and deterministic JSON/CSV report emission."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Dict, List, Optional, Sequence, TextIO, Tuple

import numpy as np

from .errors import ValidationError
from .funcspace import SampledFunction, make_sampled


def fmt_float(v: float) -> str:
    v = float(v)
    if not math.isfinite(v):
        raise ValidationError(f"non-finite number {v!r} in report")
    if v == 0.0:
        return "0"  # folds -0.0 as well
    return "%.17g" % v


def _rows(stream: TextIO) -> List[List[str]]:
    rows = []
    for row in csv.reader(stream):
        if not row or not "".join(row).strip():
            continue
        if row[0].lstrip().startswith("#"):
            continue
        rows.append([c.strip() for c in row])
    return rows


def read_xy(stream: TextIO, header: bool = True, sort: bool = False) -> SampledFunction:
    """Two numeric columns x, y. Blank lines and ``#`` comment lines are skipped."""
    rows = _rows(stream)
    if header:
        if not rows:
            raise ValidationError("empty input: expected a header line")
        rows = rows[1:]
    pairs: List[Tuple[float, float]] = []
    for lineno, row in enumerate(rows, start=2 if header else 1):
        if len(row) < 2:
            raise ValidationError(f"data row {lineno}: expected two columns, got {row!r}")
        try:
            pairs.append((float(row[0]), float(row[1])))
        except ValueError:
            raise ValidationError(f"data row {lineno}: non-numeric entry in {row!r}") from None
    if sort:
        pairs.sort(key=lambda p: p[0])
    return make_sampled([p[0] for p in pairs], [p[1] for p in pairs])


def read_table(stream: TextIO) -> Dict[str, np.ndarray]:
    """Header row plus numeric columns, as written by :func:`dumps_csv`."""
    rows = _rows(stream)
    if not rows:
        raise ValidationError("empty table")
    names, body = rows[0], rows[1:]
    try:
        data = np.array([[float(c) for c in row] for row in body], dtype=float)
    except ValueError:
        raise ValidationError("non-numeric entry in table body") from None
    if data.size == 0 or data.shape[1] != len(names):
        raise ValidationError("table rows do not match the header")
    return {name: data[:, k] for k, name in enumerate(names)}


def write_xy(f: SampledFunction, stream: TextIO) -> None:
    stream.write("x,y\n")
    for x, y in zip(f.xs, f.ys):
        stream.write(f"{fmt_float(x)},{fmt_float(y)}\n")


# -- reports ------------------------------------------------------------------

def _json_value(value, indent: int) -> str:
    pad = "  " * indent
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return fmt_float(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, np.ndarray):
        value = value.tolist()
    if isinstance(value, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in value):
            return "[" + ", ".join(_json_value(v, 0) for v in value) + "]"
        inner = ",\n".join(pad + "  " + _json_value(v, indent + 1) for v in value)
        return "[\n" + inner + "\n" + pad + "]" if value else "[]"
    if isinstance(value, dict):
        if not value:
            return "{}"
        inner = ",\n".join(f"{pad}  {json.dumps(str(k))}: {_json_value(v, indent + 1)}"
                           for k, v in value.items())
        return "{\n" + inner + "\n" + pad + "}"
    raise TypeError(f"cannot serialise {type(value).__name__}")


def dumps_json(report: dict) -> str:
    """JSON with fixed key order and floats printed with 17 significant digits."""
    return _json_value(report, 0) + "\n"


def _scalar_text(value) -> str:
    if isinstance(value, (list, tuple, np.ndarray)):
        return " ".join(_scalar_text(v) for v in value)
    if isinstance(value, bool) or value is None:
        return _json_value(value, 0)
    if isinstance(value, (float, np.floating)):
        return fmt_float(value)
    return str(value)


def _write_check(out, chk: dict, depth: int) -> None:
    verdict = "PASS" if chk["passed"] else "FAIL"
    loc = "" if chk["location"] is None else " at " + _scalar_text(chk["location"])
    out.write(f"# check {'  ' * depth}{chk['name']}: {verdict} worst={fmt_float(chk['worst_violation'])}"
              f" tol={fmt_float(chk['tol'])}{loc}\n")
    for child in chk.get("children", []):
        _write_check(out, child, depth + 1)


def dumps_csv(report: dict) -> str:
    """One row per grid point; scalars and checks in a ``#`` comment header."""
    out = io.StringIO()
    for section in ("input", "params", "results"):
        for key, value in report.get(section, {}).items():
            out.write(f"# {section}.{key}: {_scalar_text(value)}\n")
    for chk in report.get("checks", []):
        _write_check(out, chk, 0)
    columns = report.get("columns", {})
    if columns:
        names = list(columns)
        out.write(",".join(names) + "\n")
        length = len(next(iter(columns.values())))
        for k in range(length):
            out.write(",".join(fmt_float(columns[name][k]) for name in names) + "\n")
    return out.getvalue()
