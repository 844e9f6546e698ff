"""Deterministic JSON/CSV emission and input parsing for the CLI.

All floating-point output uses 17 significant digits ('%.17g'), '.' as the
decimal separator, and LF line endings, so identical inputs produce
byte-identical artifacts.  Sequence inputs accept exactly one coefficient
family per document: {"c", "m"}, {"c", "d"}, or {"alpha"}, plus an optional
"tail_period".
"""

from __future__ import annotations

import math
import sys
from pathlib import Path

from .bijection import SequencePair, make_pair
from .errors import InternalInvariant, InvalidParameters

__all__ = [
    "format_float",
    "dumps",
    "write_csv",
    "read_input_document",
    "load_sequences",
    "complex_pairs",
]


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise InternalInvariant(f"non-finite value {x!r} in output")
    if x == 0.0:
        return "0"  # fold -0.0
    return format(x, ".17g")


def _emit(obj, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append('"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(", ")
            _emit(item, out)
        out.append("]")
    elif isinstance(obj, dict):
        out.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                out.append(", ")
            _emit(str(key), out)
            out.append(": ")
            _emit(value, out)
        out.append("}")
    else:
        raise InternalInvariant(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """JSON text with '%.17g' floats and insertion-ordered keys."""
    out: list[str] = []
    _emit(obj, out)
    return "".join(out)


def complex_pairs(values) -> list[list[float]]:
    """Complex sequence as [[re, im], ...] rows."""
    return [[complex(v).real, complex(v).imag] for v in values]


def write_csv(path, header: str, rows) -> None:
    """Rows of ints/floats under a fixed header, LF endings."""
    lines = [header]
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, bool):
                raise InternalInvariant("bool cell in CSV output")
            if isinstance(cell, int):
                cells.append(str(cell))
            else:
                cells.append(format_float(cell))
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii", newline="")


# ------------------ input parsing ------------------ #


def read_input_document(spec: str) -> dict:
    """Resolve an input argument: inline JSON (starts with '{'), '-' for
    standard input, or a file path."""
    import json

    if spec == "-":
        text = sys.stdin.read()
    elif spec.lstrip().startswith("{"):
        text = spec
    else:
        path = Path(spec)
        if not path.exists():
            raise InvalidParameters(f"input file {spec!r} does not exist")
        text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidParameters(f"input is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InvalidParameters("input JSON must be an object")
    return doc


def _real_list(doc: dict, key: str) -> tuple[float, ...]:
    raw = doc[key]
    if not isinstance(raw, list) or not raw:
        raise InvalidParameters(f"{key!r} must be a non-empty array of reals")
    out = []
    for i, v in enumerate(raw):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise InvalidParameters(f"{key}[{i}] = {v!r} is not a real number")
        out.append(float(v))
    return tuple(out)


def _alpha_list(doc: dict) -> tuple[complex, ...]:
    raw = doc["alpha"]
    if not isinstance(raw, list) or not raw:
        raise InvalidParameters("'alpha' must be a non-empty array")
    out = []
    for i, v in enumerate(raw):
        if isinstance(v, (int, float)) and not isinstance(v, bool):
            out.append(complex(float(v)))
        elif (
            isinstance(v, list)
            and len(v) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v)
        ):
            out.append(complex(float(v[0]), float(v[1])))
        else:
            raise InvalidParameters(
                f"alpha[{i}] = {v!r} must be a real or an [re, im] pair"
            )
    return tuple(out)


def load_sequences(doc: dict):
    """Parsed coefficients: ('pair', SequencePair) or ('alpha', tuple).

    Exactly one family must be present: c with m, c with d, or alpha.
    """
    has_c = "c" in doc
    has_m = "m" in doc
    has_d = "d" in doc
    has_alpha = "alpha" in doc
    tail = doc.get("tail_period")
    if tail is not None and (isinstance(tail, bool) or not isinstance(tail, int) or tail < 1):
        raise InvalidParameters(f"tail_period = {tail!r} must be a positive integer")

    if has_alpha:
        if has_c or has_m or has_d:
            raise InvalidParameters(
                "give exactly one coefficient family: {c, m}, {c, d}, or {alpha}"
            )
        return "alpha", _alpha_list(doc), tail
    if not has_c or (has_m == has_d):
        raise InvalidParameters(
            "give exactly one coefficient family: {c, m}, {c, d}, or {alpha}"
        )
    c = _real_list(doc, "c")
    if has_m:
        m = _real_list(doc, "m")
        if len(m) == len(c):  # leading m_0 = 0 may be omitted
            m = (0.0,) + m
        pair = make_pair(c, m=m, tail_period=tail)
    else:
        pair = make_pair(c, d=_real_list(doc, "d"), tail_period=tail)
    return "pair", pair, tail
