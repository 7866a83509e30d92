"""Structured pass/fail records produced by the verification routines."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    status: str
    witness: Any = None
    note: Optional[str] = None

    def to_json(self) -> dict:
        from .io import jsonable

        out = {"check_id": self.check_id, "status": self.status}
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class DualityReport:
    """Checks keyed by id; merge is order-independent."""

    entries: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def add(self, check_id: str, ok: bool, witness=None, note=None) -> bool:
        self.entries[check_id] = CheckResult(check_id, PASS if ok else FAIL, None if ok else witness, note)
        return ok

    def skip(self, check_id: str, note: str) -> None:
        self.entries[check_id] = CheckResult(check_id, SKIPPED, note=note)

    def extend(self, other: "DualityReport", prefix: str = "") -> None:
        for key, entry in other.entries.items():
            new_id = prefix + key
            self.entries[new_id] = CheckResult(new_id, entry.status, entry.witness, entry.note)

    def __getitem__(self, check_id: str) -> CheckResult:
        return self.entries[check_id]

    def __contains__(self, check_id: str) -> bool:
        return check_id in self.entries

    def failures(self) -> list:
        return [e for k, e in sorted(self.entries.items()) if e.status == FAIL]

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for e in self.entries.values():
            out[e.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return not self.failures()

    def to_json(self) -> dict:
        return {
            "meta": self.meta,
            "summary": self.counts(),
            "checks": [e.to_json() for _, e in sorted(self.entries.items())],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False)
