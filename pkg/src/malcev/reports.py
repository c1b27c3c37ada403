"""Machine-readable check reports.

Every verification sweep returns a Report instead of raising: a failing
check always carries a witness that reproduces the defect through the
element-level operations.  Timing lives in a separate field so report
streams can be compared byte-for-byte across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

PASS = "pass"
FAIL = "fail"
ERROR = "error"


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


@dataclass
class Report:
    check: str
    status: str
    witness: dict | None = None
    details: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_dict(self, with_timing: bool = False) -> dict:
        out = {
            "check": self.check,
            "status": self.status,
            "witness": _jsonable(self.witness) if self.witness else None,
            "details": _jsonable(self.details),
        }
        if self.warnings:
            out["warnings"] = list(self.warnings)
        if with_timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out

    def __str__(self) -> str:
        extra = f" witness={self.witness}" if self.witness else ""
        return f"[{self.status}] {self.check}{extra}"
