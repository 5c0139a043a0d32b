"""
JSON-ready records for single elements and whole-group scans.

Infinity is written as the string "inf" everywhere, since JSON has no
portable encoding for it.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .bruhat import poincare
from .groups import CoxeterContext, Element, Permutation, identity
from .heights import h_bjorner_ekedahl, h_formula_type_a, h_upper_bound_type_d
from .kl import INFINITY, h_via_kl, kl_polynomial
from .patterns import (
    is_smooth_by_patterns, magnitude, min_content, min_height, pattern_flags,
)

__all__ = [
    "METHODS", "methods_for", "encode_h", "decode_h", "element_record",
    "scan_records", "write_scan", "read_scan", "dumps",
]

METHODS = ("kl", "be", "formula", "bound")


def methods_for(context: CoxeterContext, method: str) -> list[str]:
    """Expand `all` and reject methods that do not apply to the group."""
    exact_extra = "formula" if context.type == "A" else "bound"
    if method == "all":
        out = ["kl", "be"]
        if context.type == "A" or context.rank >= 4:
            out.append(exact_extra)
        return out
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if method == "formula" and context.type != "A":
        raise ValueError("method formula applies to type A only")
    if method == "bound" and (context.type != "D" or context.rank < 4):
        raise ValueError("method bound needs type D of rank >= 4")
    return [method]


def encode_h(h):
    return "inf" if h == INFINITY else h


def decode_h(v):
    if v in ("inf", INFINITY):
        return "inf"
    return int(v)


def pattern_stats(w: Element) -> dict:
    out = dict(pattern_flags(w))
    out["mh"] = min_height(w)
    if isinstance(w, Permutation):
        out["mcontent"] = min_content(w)
    else:
        out["mg"] = magnitude(w)
    return out


def element_record(w: Element, methods: Sequence[str] = ("kl", "be")) -> dict:
    """Everything known about w, with h computed by each requested method."""
    ctx = w.context
    h = {}
    P = None
    for m in methods:
        if m == "kl":
            h["kl"] = h_via_kl(w)
            P = list(kl_polynomial(identity(ctx), w).coeffs)
        elif m == "be":
            h["be"] = h_bjorner_ekedahl(w)
        elif m == "formula":
            h["formula"] = h_formula_type_a(w)
        elif m == "bound":
            h["bound"] = h_upper_bound_type_d(w)
    smooth_patterns = is_smooth_by_patterns(w)
    smooth_by = {"patterns": smooth_patterns}
    if "kl" in h:
        smooth_by["kl"] = h["kl"] == INFINITY
    rec = {
        "type": ctx.type,
        "rank": ctx.rank,
        "w": list(w.images if isinstance(w, Permutation) else w.window),
        "ell": w.length,
        "L": list(poincare(w).coeffs),
        "P": P,
        "h": {k: encode_h(v) for k, v in h.items()},
    }
    # flat aliases of the nested h values
    for k, v in h.items():
        rec[f"h_{k}"] = encode_h(v)
    rec["smooth"] = smooth_by.get("kl", smooth_patterns)
    rec["smooth_by"] = smooth_by
    rec["patterns"] = pattern_stats(w)
    return rec


def _encode(obj, depth: int) -> str:
    if isinstance(obj, dict) and obj:
        pad = "  " * (depth + 1)
        items = ",\n".join(f"{pad}{json.dumps(k)}: {_encode(v, depth + 1)}"
                           for k, v in obj.items())
        return "{\n" + items + "\n" + "  " * depth + "}"
    if isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        pad = "  " * (depth + 1)
        items = ",\n".join(pad + _encode(x, depth + 1) for x in obj)
        return "[\n" + items + "\n" + "  " * depth + "]"
    return json.dumps(obj, allow_nan=False)


def dumps(obj) -> str:
    """JSON with nested objects indented and flat arrays kept on one line.

    >>> print(dumps({"w": [3, 4, 1, 2], "h": {"kl": 1}}), end="")
    {
      "w": [3, 4, 1, 2],
      "h": {
        "kl": 1
      }
    }
    """
    return _encode(obj, 0) + "\n"


# -- scans ------------------------------------------------------------------

_SCAN_FLAGS = ("contains_3412", "contains_4231", "contains_12m3",
               "contains_1m3m2", "contains_14m32")


def scan_row(w: Element) -> dict:
    """A flattened record: one-line, ell, L, P, h by every method, flags."""
    rec = element_record(w, methods_for(w.context, "all"))
    row = {"w": rec["w"], "ell": rec["ell"], "L": rec["L"], "P": rec["P"]}
    for k, v in rec["h"].items():
        row[f"h_{k}"] = v
    row["smooth"] = rec["smooth"]
    for f in _SCAN_FLAGS:
        row[f] = rec["patterns"][f]
    return row


def scan_records(context: CoxeterContext, elements: Iterable[Element]) -> list[dict]:
    return [scan_row(w) for w in elements]


def _columns(rows: list[dict]) -> list[str]:
    return list(rows[0]) if rows else ["w", "ell", "L", "P"]


def _cell(v) -> str:
    if isinstance(v, list):
        return " ".join(map(str, v))
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def write_scan(context: CoxeterContext, rows: list[dict], fmt: str = "json",
               out: Optional[Path] = None) -> str:
    """Serialize scan rows; returns the text and writes it to `out` if given."""
    if fmt == "json":
        text = dumps({"type": context.type, "rank": context.rank, "rows": rows})
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        cols = _columns(rows)
        writer.writerow(cols)
        for r in rows:
            writer.writerow([_cell(r[c]) for c in cols])
        text = buf.getvalue()
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if out is not None:
        Path(out).write_text(text)
    return text


def _parse_cell(col: str, v: str):
    if col in ("w", "L", "P"):
        return [int(x) for x in v.split()]
    if col == "ell":
        return int(v)
    if col.startswith("h_"):
        return decode_h(v)
    if v in ("true", "false"):
        return v == "true"
    raise ValueError(f"unexpected value {v!r} in column {col}")


def read_scan(path, fmt: Optional[str] = None) -> list[dict]:
    """Parse a scan file written by write_scan back into its rows."""
    path = Path(path)
    text = path.read_text()
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "csv"
    if fmt == "json":
        return json.loads(text)["rows"]
    reader = csv.reader(io.StringIO(text))
    cols = next(reader)
    return [{c: _parse_cell(c, v) for c, v in zip(cols, line)} for line in reader]
