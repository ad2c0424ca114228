"""CSV / JSON emission with fixed 17-significant-digit floats, and readers."""

from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

DIST_HEADER = ("k", "prob", "psiL_re", "psiL_im", "psiR_re", "psiR_im")
SERIES_HEADER = ("n", "P_n", "p_re", "p_im", "r_re", "r_im")
DENSITY_HEADER = ("x", "f")


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text where every float carries exactly 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    return fmt(obj)


def loads(text: str):
    return json.loads(text)


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def read_csv(text: str) -> tuple[list[str], list[list[float]]]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    return header, [[float(v) for v in row] for row in reader if row]


def distribution_rows(field):
    """Rows of the distribution CSV; sites with both amplitudes zero are skipped."""
    for k, left, right in field.items():
        prob = abs(left) ** 2 + abs(right) ** 2
        yield (k, prob, left.real, left.imag, right.real, right.imag)


def series_rows(series, probs):
    for n in range(1, series.n_max + 1):
        p, r = series.p[n], series.r[n]
        yield (n, probs[n], p.real, p.imag, r.real, r.imag)
