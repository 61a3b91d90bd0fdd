"""Check reports shared by the verification suites and the CLI."""

from __future__ import annotations

__all__ = ["Check", "Report", "PreconditionError"]


class PreconditionError(ValueError):
    """A semantic precondition failed (bad shapes, gates, inconsistent data)."""


class Check:
    """Outcome of one exactly-checked identity."""

    __slots__ = ("name", "passed", "checked", "witness", "residual")

    def __init__(self, name, passed, checked, witness=None, residual=None):
        self.name = name
        self.passed = passed
        self.checked = checked
        self.witness = witness
        self.residual = residual

    def to_dict(self):
        out = {"name": self.name, "status": "pass" if self.passed else "fail",
               "checked": self.checked}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.residual is not None:
            out["residual"] = self.residual
        return out

    def __repr__(self):
        state = "pass" if self.passed else f"FAIL at {self.witness} (residual {self.residual})"
        return f"[{state}] {self.name} ({self.checked} tuples)"


class Report:
    """Ordered collection of checks; passes iff every check passes."""

    def __init__(self, title=""):
        self.title = title
        self.checks = []

    def add(self, name, passed, checked, witness=None, residual=None):
        self.checks.append(Check(name, passed, checked, witness, residual))

    def extend(self, other):
        self.checks.extend(other.checks)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed_checks(self):
        return [c for c in self.checks if not c.passed]

    def to_dict(self):
        return {"title": self.title, "passed": self.passed,
                "checks": [c.to_dict() for c in self.checks]}

    def render(self):
        lines = [self.title] if self.title else []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            line = f"  [{mark}] {c.name}  ({c.checked} tuples)"
            if not c.passed:
                line += f"  witness: {c.witness}  residual: {c.residual}"
            lines.append(line)
        return "\n".join(lines)

    def __repr__(self):
        return self.render()
