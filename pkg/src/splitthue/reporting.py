"""Deterministic JSON and CSV output.

Keys are sorted, floats are written with 12 significant digits, and
integers too large for an IEEE double are written as decimal strings.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from pathlib import Path

import mpmath

SCHEMA_VERSION = 1
SIG_DIGITS = 12
_SAFE_INT = 2**53


def _float(x: float):
    if math.isnan(x) or math.isinf(x):
        return str(x)
    return float(f"{x:.{SIG_DIGITS}g}")


def plain(obj):
    """Recursively convert to JSON-ready values."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj if abs(obj) < _SAFE_INT else str(obj)
    if isinstance(obj, float):
        return _float(obj)
    if isinstance(obj, Fraction):
        return plain(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, mpmath.mpf):
        if obj == 0 or 1e-300 < abs(obj) < 1e300:
            return _float(float(obj))
        return mpmath.nstr(obj, SIG_DIGITS)
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if hasattr(obj, "as_dict"):
        return plain(obj.as_dict())
    if isinstance(obj, range):
        return [obj.start, obj.stop - 1]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(payload: dict, kind: str) -> str:
    doc = {"schema_version": SCHEMA_VERSION, "kind": kind, **payload}
    return json.dumps(plain(doc), sort_keys=True, indent=2) + "\n"


def csv_text(rows: list[dict]) -> str:
    """Columns are the sorted union of keys; missing cells are empty."""
    cols = sorted({k for r in rows for k in r})
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: _cell(r.get(k)) for k in cols})
    return buf.getvalue()


def _cell(v):
    v = plain(v)
    if v is None:
        return ""
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return v


def write_text(path, text: str) -> None:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(text, encoding="utf-8")
