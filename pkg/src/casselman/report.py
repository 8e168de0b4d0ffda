"""
Reports emitted by scans, verification suites and reproductions.

A report is a versioned JSON document

    {"schema": 1, "kind": ..., "name": ..., "group": "A3", "backend": ...,
     "status": "pass" | "fail" | "report", "counts": {...},
     "rows": [{"pair": [u, v], "status": ..., "witnesses": {...}}, ...],
     "notes": [...]}

Serialization is deterministic: keys are sorted and rows keep the order in
which the producer emitted them (always a canonical order).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any

from .symbolics import QPoly, RatFn

__all__ = ["SCHEMA", "Report", "jsonable"]

SCHEMA = 1


def jsonable(x: Any) -> Any:
    """Convert symbolic values (and containers of them) to plain JSON data."""
    if isinstance(x, (RatFn, QPoly)):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "item"):  # numpy scalar
        return x.item()
    return x


@dataclass
class Report:
    kind: str
    name: str
    group: str
    backend: str = "symbolic"
    status: str = "report"
    counts: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def add_row(self, pair, status: str, **witnesses) -> None:
        self.rows.append({"pair": list(pair), "status": status, "witnesses": witnesses})

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": self.kind,
            "name": self.name,
            "group": self.group,
            "backend": self.backend,
            "status": self.status,
            "counts": jsonable(self.counts),
            "rows": jsonable(self.rows),
            "notes": list(self.notes),
            **({"extra": jsonable(self.extra)} if self.extra else {}),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        """One line per row; witnesses flattened to their string forms."""
        keys: list[str] = []
        for row in self.rows:
            for k in row["witnesses"]:
                if k not in keys:
                    keys.append(k)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["u", "v", "status", *keys])
        for row in self.rows:
            u, v = row["pair"]
            w.writerow([u, v, row["status"], *(_cell(row["witnesses"].get(k, "")) for k in keys)])
        return buf.getvalue()

    def summary(self) -> str:
        counts = ", ".join(f"{k}={v}" for k, v in self.counts.items())
        return f"{self.kind} {self.name} {self.group} [{self.backend}]: {self.status} ({counts})"


def _cell(x: Any) -> str:
    if isinstance(x, (list, tuple)):
        if all(isinstance(v, int) for v in x):
            return "(" + ",".join(str(v) for v in x) + ")"
        return " ".join(_cell(v) for v in x)
    if isinstance(x, dict):
        return " ".join(f"{k}={_cell(v)}" for k, v in x.items())
    return str(x)
