"""Pass/fail reports produced by the verification routines and the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field

ENGINE_VERSION = "0.1.0"


@dataclass
class Check:
    name: str
    trials: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, detail: str = "") -> None:
        self.trials += 1
        if not ok:
            # keep reports bounded; the count of trials still says how many ran
            if len(self.failures) < 10:
                self.failures.append(detail or f"trial {self.trials}")

    def to_json(self) -> dict:
        return {"check": self.name, "trials": self.trials, "failures": list(self.failures),
                "status": "pass" if self.passed else "fail"}


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def check(self, name: str) -> Check:
        c = Check(name)
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def extend(self, other: "Report") -> None:
        existing = {c.name: c for c in self.checks}
        for c in other.checks:
            name = f"{other.suite}.{c.name}" if other.suite else c.name
            if name in existing:
                mine = existing[name]
                mine.trials += c.trials
                mine.failures.extend(c.failures[: max(0, 10 - len(mine.failures))])
                continue
            c.name = name
            self.checks.append(c)
            existing[name] = c
        self.notes.extend(n for n in other.notes if n not in self.notes)

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.name)],
            "engine_version": ENGINE_VERSION,
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def lines(self) -> list[str]:
        out = []
        for c in sorted(self.checks, key=lambda c: c.name):
            status = "PASS" if c.passed else "FAIL"
            out.append(f"{status}  {c.name}  ({c.trials} trials)")
            out.extend(f"      {f}" for f in c.failures)
        out.extend(f"note: {n}" for n in self.notes)
        return out
