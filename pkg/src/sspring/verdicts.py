"""Result records shared by the checkers, suites and reports."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Literal, Optional

Status = Literal["passed", "failed", "skipped"]


@dataclass(frozen=True)
class PropertyVerdict:
    property: str
    side: str  # "left", "right" or "n/a"
    holds: bool
    witness: Optional[dict[str, Any]] = None
    method: str = ""

    def __post_init__(self):
        if not self.holds and self.witness is None:
            raise ValueError(f"false verdict for {self.property} needs a witness")

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class CheckRecord:
    check_id: str
    description: str
    status: Status
    universe: int = 0
    counterexample: Optional[dict[str, Any]] = None
    detail: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "passed"


@dataclass
class TheoremReport:
    subject: str
    checks: list[CheckRecord] = field(default_factory=list)

    def add(self, record: CheckRecord) -> CheckRecord:
        self.checks.append(record)
        return record

    @property
    def passed(self) -> bool:
        """True iff no run check failed; skipped checks do not count."""
        return all(c.status != "failed" for c in self.checks)

    @property
    def skipped(self) -> list[str]:
        return [c.check_id for c in self.checks if c.status == "skipped"]

    def get(self, check_id: str) -> CheckRecord:
        for c in self.checks:
            if c.check_id == check_id:
                return c
        raise KeyError(check_id)

    def as_dict(self) -> dict:
        return {"subject": self.subject, "passed": self.passed,
                "checks": [asdict(c) for c in self.checks]}
