"""
Check Reports
Result object returned by every verification routine.
"""
from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    """Outcome of a verification: pass/fail, human reasons, machine witness."""
    name: str
    passed: bool
    reasons: list[str] = field(default_factory=list)
    witness: dict[str, Any] = field(default_factory=dict)

    def fail(self, reason: str, **witness) -> "CheckReport":
        self.passed = False
        self.reasons.append(reason)
        if witness and not self.witness:
            self.witness = witness
        return self

    def note(self, reason: str) -> "CheckReport":
        self.reasons.append(reason)
        return self

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'passed': self.passed,
            'reasons': list(self.reasons),
            'witness': self.witness,
        }


def combine(name: str, reports: list[CheckReport]) -> CheckReport:
    """All-of report; keeps the first failing witness."""
    out = CheckReport(name, True)
    for r in reports:
        status = "OK" if r.passed else "FAIL"
        out.reasons.append(f"[{status}] {r.name}")
        if not r.passed:
            out.passed = False
            if not out.witness:
                out.witness = {'check': r.name, **r.witness}
    return out
