"""Deterministic reports: check rows plus computed tables.

JSON serialization is byte-deterministic for a fixed input and version:
keys are sorted, scalars are rendered as ints over F_p and "num/den"
strings over Q, and no timestamps or environment data are included.
"""

from __future__ import annotations

import json
from typing import Sequence

from .fields import FieldSpec

SCHEMA_VERSION = 1
TOOL_NAME = "hoinv"
TOOL_VERSION = "0.1.0"

STATUS_VERIFIED = "verified"
STATUS_VIOLATED = "violated"
STATUS_OBSERVATION = "observation"
STATUS_SKIPPED = "skipped"

_STATUS_ORDER = (STATUS_VERIFIED, STATUS_VIOLATED, STATUS_OBSERVATION, STATUS_SKIPPED)


def scalar_json(field: FieldSpec, x):
    return int(x) if field.p is not None else str(x)


def matrix_json(field: FieldSpec, m) -> list:
    return [[scalar_json(field, x) for x in row] for row in m.entries]


class CheckResult:
    """One verified claim: id, the claim text, its hypothesis (with whether
    it holds on this instance), a status, and free-form details."""

    __slots__ = ("check_id", "statement", "hypothesis", "hypothesis_holds",
                 "status", "details")

    def __init__(self, check_id: str, statement: str, status: str,
                 details: str = "", hypothesis: str | None = None,
                 hypothesis_holds: bool | None = None):
        if status not in _STATUS_ORDER:
            raise ValueError(f"bad status {status!r}")
        self.check_id = check_id
        self.statement = statement
        self.hypothesis = hypothesis
        self.hypothesis_holds = hypothesis_holds
        self.status = status
        self.details = details

    def to_dict(self) -> dict:
        return {
            "id": self.check_id,
            "statement": self.statement,
            "hypothesis": self.hypothesis,
            "hypothesis_holds": self.hypothesis_holds,
            "status": self.status,
            "details": self.details,
        }


class Report:
    __slots__ = ("instance_name", "instance", "tables", "checks")

    def __init__(self, instance_name: str, instance: dict, tables: dict,
                 checks: Sequence[CheckResult]):
        self.instance_name = instance_name
        self.instance = instance
        self.tables = tables
        self.checks = list(checks)

    @property
    def has_violation(self) -> bool:
        return any(c.status == STATUS_VIOLATED for c in self.checks)

    def summary(self) -> dict:
        out = {s: 0 for s in _STATUS_ORDER}
        for c in self.checks:
            out[c.status] += 1
        return out

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "tool": {"name": TOOL_NAME, "version": TOOL_VERSION},
            "instance_name": self.instance_name,
            "instance": self.instance,
            "tables": self.tables,
            "checks": [c.to_dict() for c in self.checks],
            "summary": self.summary(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def human_lines(self) -> list[str]:
        """Tab-delimited rendering: tables first, then one row per check."""
        lines = [f"# instance\t{self.instance_name}"]
        for key in sorted(self.tables):
            value = self.tables[key]
            lines.append(_format_table_line(key, value))
        lines.append("check\tstatus\thypothesis\tdetails")
        for c in self.checks:
            hyp = "-"
            if c.hypothesis is not None:
                state = {True: "holds", False: "fails", None: "untested"}[c.hypothesis_holds]
                hyp = f"{c.hypothesis} [{state}]"
            lines.append(f"{c.check_id}\t{c.status}\t{hyp}\t{c.details}")
        s = self.summary()
        lines.append("summary\t" + "\t".join(f"{k}={s[k]}" for k in _STATUS_ORDER))
        return lines


def _format_table_line(key: str, value) -> str:
    if isinstance(value, (list, tuple)):
        flat = "\t".join(_cell(v) for v in value)
        return f"{key}\t{flat}"
    return f"{key}\t{_cell(value)}"


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + " ".join(_cell(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + " ".join(f"{k}:{_cell(x)}" for k, x in sorted(v.items())) + "}"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    return str(v)
