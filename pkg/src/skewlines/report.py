"""Expected-versus-computed check records shared by the verification routines."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


def _plain(value: Any) -> Any:
    """Convert numpy scalars and containers into JSON-friendly Python values."""
    if hasattr(value, "tolist"):
        return value.tolist()
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return int(value)
    return value


@dataclass
class Check:
    name: str
    expected: Any
    computed: Any
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        d = {
            "name": self.name,
            "expected": _plain(self.expected),
            "computed": _plain(self.computed),
            "passed": bool(self.passed),
        }
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class CheckList:
    """An ordered collection of checks that never stops at the first failure."""

    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, expected: Any, computed: Any, passed: bool | None = None, detail: str = "") -> Check:
        if passed is None:
            passed = _plain(expected) == _plain(computed)
        check = Check(name, expected, computed, bool(passed), detail)
        self.checks.append(check)
        return check

    def extend(self, other: "CheckList", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.expected, c.computed, c.passed, c.detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __iter__(self):
        return iter(self.checks)

    def __len__(self) -> int:
        return len(self.checks)

    def as_dict(self) -> dict:
        return {"passed": self.passed, "checks": [c.as_dict() for c in self.checks]}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.as_dict(), **kwargs)
