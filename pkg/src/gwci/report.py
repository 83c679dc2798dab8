"""Pass/fail bookkeeping shared by the verification suites."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional


@dataclass
class Check:
    name: str
    indices: dict
    lhs: object
    rhs: object

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs

    def describe(self) -> str:
        idx = ", ".join(f"{k}={v}" for k, v in self.indices.items())
        return f"{self.name} [{idx}]: {self.lhs} != {self.rhs}"


@dataclass
class Report:
    counts: Dict[str, int] = field(default_factory=dict)
    failures: List[Check] = field(default_factory=list)

    def add(self, check: Check):
        self.counts[check.name] = self.counts.get(check.name, 0) + 1
        if not check.ok:
            self.failures.append(check)

    def merge(self, other: "Report"):
        for k, v in other.counts.items():
            self.counts[k] = self.counts.get(k, 0) + v
        self.failures.extend(other.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def first_failure(self) -> Optional[Check]:
        return self.failures[0] if self.failures else None
