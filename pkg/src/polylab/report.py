"""Plain-text check reports: one ``CHECK <name> PASS|FAIL <details>`` line per claim."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    details: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"CHECK {self.name} {status} {self.details}".rstrip()


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    complete: bool = True
    data: dict = field(default_factory=dict)
    summary: str = ""

    def add(self, name: str, passed: bool, details: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), details))
        return bool(passed)

    def note(self, text: str):
        self.notes.append(text)

    @property
    def ok(self) -> bool:
        return self.complete and all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def render(self) -> str:
        out = [f"# {self.title}"]
        out.extend(f"# {n}" for n in self.notes)
        out.extend(c.line() for c in self.checks)
        if not self.complete:
            out.append("# report incomplete: search truncated")
        if self.summary:
            out.append(f"# summary: {self.summary}")
        return "\n".join(out) + "\n"
