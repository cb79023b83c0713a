"""Verification records and canonical report emission.

Reports are emitted with sorted keys and no timestamps, so identical
inputs produce byte-identical JSON.  Exact rationals are serialized as
"num/den" strings; rounding happens only at explicitly labeled columns.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


@dataclass
class VerificationResult:
    """Outcome of one checked claim."""

    name: str
    passed: bool
    first_violation: int | None = None
    n_checked: int | None = None
    status: str | None = None
    detail: str = ""
    claim: dict[str, Any] = field(default_factory=dict)
    orders: dict[str, int] = field(default_factory=dict)

    def to_record(self) -> dict[str, Any]:
        rec: dict[str, Any] = {"name": self.name, "passed": self.passed}
        rec.update(self.claim)
        if self.n_checked is not None:
            rec["n_checked"] = self.n_checked
        rec["first_violation"] = self.first_violation
        if self.status is not None:
            rec["status"] = self.status
        if self.detail:
            rec["detail"] = self.detail
        if self.orders:
            rec["orders"] = dict(self.orders)
        return rec


@dataclass
class SuiteReport:
    """A batch of verification results under one named run."""

    name: str
    label: str
    parameters: dict[str, Any]
    results: list[VerificationResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_record(self) -> dict[str, Any]:
        return {
            "suite": self.name,
            "label": self.label,
            "parameters": dict(self.parameters),
            "passed": self.passed,
            "records": [r.to_record() for r in sorted(self.results, key=lambda r: r.name)],
        }


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"not JSON serializable: {type(obj)!r}")


def to_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, default=_jsonable) + "\n"


CONGRUENCE_COLUMNS = (
    "family",
    "k",
    "alpha",
    "m",
    "j",
    "modulus",
    "n_checked",
    "status",
    "first_violation",
)


def to_csv(rows: list[dict[str, Any]], columns: tuple[str, ...]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({c: _csv_cell(row.get(c)) for c in columns})
    return buf.getvalue()


def _csv_cell(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if value is None:
        return ""
    return value
