"""Pass/fail reports produced by the verification routines."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    skipped: bool = False

    def line(self) -> str:
        status = "SKIP" if self.skipped else ("PASS" if self.passed else "FAIL")
        return f"[{status}] {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    def skip(self, name: str, reason: str) -> None:
        self.checks.append(Check(name, True, reason, skipped=True))

    def extend(self, other: Report) -> None:
        for c in other.checks:
            self.checks.append(Check(f"{other.title}: {c.name}", c.passed, c.detail, c.skipped))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def render(self) -> str:
        lines = [f"== {self.title} =="]
        lines += [c.line() for c in self.checks]
        n_fail = sum(not c.passed for c in self.checks)
        lines.append(f"{len(self.checks) - n_fail}/{len(self.checks)} passed")
        return "\n".join(lines)
