"""Structured check results and their canonical serialization.

Every verification routine returns a :class:`Report`. Reports serialize to
JSON with sorted keys and shortest round-trip float formatting, so identical
runs produce byte-identical files. Non-finite floats are written as the
strings ``"inf"``, ``"-inf"`` and ``"nan"``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

SCHEMA = "cubeineq.report/1"

PASS = "pass"
VIOLATION = "violation"
FAILURE = "numerical_failure"

_SEVERITY = {PASS: 0, VIOLATION: 1, FAILURE: 2}


def plain(obj):
    """Convert numpy types, tuples and non-finite floats to JSON-ready values."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(obj, complex):
        return {"re": plain(obj.real), "im": plain(obj.imag)}
    if hasattr(obj, "to_dict"):
        return plain(obj.to_dict())
    return obj


@dataclass
class Report:
    """Outcome of one verification check.

    ``anchor`` names the inequality or identity the check embodies, in words.
    ``verdict`` is one of ``"pass"``, ``"violation"`` or ``"numerical_failure"``.
    """

    suite: str
    check: str
    verdict: str
    inputs: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    anchor: str = ""
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict:
        return plain({
            "suite": self.suite,
            "check": self.check,
            "verdict": self.verdict,
            "inputs": self.inputs,
            "values": self.values,
            "tolerances": self.tolerances,
            "anchor": self.anchor,
            "notes": self.notes,
        })

    def to_json(self) -> str:
        return dumps(self.to_dict())


def verdict_of(ok: bool) -> str:
    return PASS if ok else VIOLATION


def worst_verdict(verdicts) -> str:
    worst = PASS
    for v in verdicts:
        if _SEVERITY[v] > _SEVERITY[worst]:
            worst = v
    return worst


def dumps(obj) -> str:
    return json.dumps(plain(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


def document(reports) -> dict:
    """Bundle reports into one document, ordered by ``(suite, check)``."""
    items = sorted(reports, key=lambda r: (r.suite, r.check))
    return {
        "schema": SCHEMA,
        "verdict": worst_verdict(r.verdict for r in items),
        "reports": [r.to_dict() for r in items],
    }


def write_json(path, obj) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(obj))


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def write_csv(path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(csv_text(header, rows))


def _csv_cell(v):
    v = plain(v)
    if isinstance(v, float):
        return repr(v)
    return v
