"""Pass/fail records shared by the verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    statement: str
    bound_value: Any
    actual_value: Any
    passed: bool | None  # None means "not checked"
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "statement": self.statement,
            "bound_value": _jsonable(self.bound_value),
            "actual_value": _jsonable(self.actual_value),
            "pass": self.passed,
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Report:
    name: str
    checks: list[Check] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def add(self, statement: str, bound_value, actual_value, passed, note: str = "") -> Check:
        c = Check(statement, bound_value, actual_value, passed, note)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.statement, c.bound_value, c.actual_value,
                                     c.passed, c.note))

    @property
    def passed(self) -> bool:
        """True when nothing failed; skipped checks do not count as failures."""
        return all(c.passed is not False for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.passed is False]

    @property
    def checked(self) -> int:
        return sum(c.passed is not None for c in self.checks)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "pass": self.passed,
            "info": {k: _jsonable(v) for k, v in self.info.items()},
            "checks": [c.to_json() for c in self.checks],
        }


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if hasattr(v, "to_json"):
        return v.to_json()
    if isinstance(v, float) and v != v:
        return None
    return v
