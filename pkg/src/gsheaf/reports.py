"""Structured pass/fail/skip reports for checks and verifications."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of one named check.

    hypotheses maps each hypothesis to True/False or "automatic";
    passed is None exactly when some hypothesis failed and the check
    was skipped rather than asserted (never a silent pass).
    """

    check: str
    hypotheses: dict = field(default_factory=dict)
    lhs: object = None
    rhs: object = None
    passed: bool | None = None
    witnesses: dict = field(default_factory=dict)
    caps_hit: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.passed is None:
            return "skip"
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "hypotheses": {k: self.hypotheses[k] for k in sorted(self.hypotheses)},
            "lhs": self.lhs,
            "rhs": self.rhs,
            "pass": self.passed,
            "status": self.status,
            "witnesses": {k: self.witnesses[k] for k in sorted(self.witnesses)},
            "caps_hit": list(self.caps_hit),
            "notes": list(self.notes),
        }

    def line(self) -> str:
        extra = ""
        if self.status == "skip":
            failed = [k for k, v in self.hypotheses.items() if v is False]
            what = ", ".join(failed) if failed else ", ".join(self.caps_hit)
            extra = f" (hypothesis-skip: {what})" if what else " (hypothesis-skip)"
        elif self.status == "fail" and self.witnesses:
            extra = f" witnesses={self.witnesses}"
        return f"[{self.status:>4}] {self.check}{extra}"


def skip_report(check: str, hypotheses=None, caps_hit=None, notes=None) -> Report:
    return Report(check=check, hypotheses=hypotheses or {},
                  caps_hit=list(caps_hit or []), notes=list(notes or []),
                  passed=None)
