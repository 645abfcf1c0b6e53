"""Line-delimited JSON records and the CSV summary table.

Floats are written with 17 significant digits so every value survives a
text round trip bit for bit.
"""

from __future__ import annotations

import csv
import json
import math

REPORT_SCHEMA = {
    "type": "object",
    "required": ["case_id", "theorem", "params", "lhs", "lhs_err", "rhs", "slack",
                 "branch", "verdict"],
    "additionalProperties": False,
    "properties": {
        "case_id": {"type": "string"},
        "theorem": {"enum": ["T14", "T15", "T21", "T22", "T23", "T31", "T32", "C31", "C32"]},
        "params": {
            "type": "object",
            "required": ["a", "b", "p", "q"],
            "properties": {
                "a": {"type": "number"}, "b": {"type": "number"},
                "p": {"type": "number"}, "q": {"type": "number"},
                "alpha": {"type": "number"}, "m": {"type": "number"},
                "k": {"type": "number"}, "l": {"type": "number"},
                "direction": {"enum": ["increasing", "decreasing"]},
            },
            "additionalProperties": False,
        },
        "lhs": {"type": ["number", "null"]},
        "lhs_err": {"type": ["number", "null"]},
        "rhs": {"type": ["number", "null"]},
        "slack": {"type": ["number", "null"]},
        "branch": {"enum": ["from_a", "from_b", "single", None]},
        "verdict": {"type": "string", "pattern": r"^(pass|fail|skipped\([a-z_]+\))$"},
    },
}

SUMMARY_COLUMNS = ("theorem", "cases", "passes", "fails", "skips", "min_slack")


def _encode(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"cannot encode non-finite float {obj!r}")
        return format(obj, ".17g")
    if isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ",".join(json.dumps(str(k)) + ":" + _encode(v) for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_encode(v) for v in obj) + "]"
    # numpy scalars and the like
    if hasattr(obj, "item"):
        return _encode(obj.item())
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(record: dict) -> str:
    return _encode(record)


def write_records(records, fh):
    for rec in records:
        fh.write(dumps(rec))
        fh.write("\n")


def read_records(fh):
    return [json.loads(line) for line in fh if line.strip()]


def write_summary_csv(rows, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(SUMMARY_COLUMNS)
    for row in rows:
        writer.writerow([row[c] if not isinstance(row[c], float) else format(row[c], ".17g")
                         for c in SUMMARY_COLUMNS])
