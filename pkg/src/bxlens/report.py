"""Law reports: per-law case counts plus the first violation of each law."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .carrier import render


def show(x: Any) -> str:
    # EffectValue renders itself via __str__
    if hasattr(x, "effect") and hasattr(x, "payload"):
        return str(x)
    return render(x)


@dataclass(frozen=True)
class Violation:
    law: str
    bindings: tuple  # ((name, value), ...)
    lhs: Any
    rhs: Any
    note: str = ""

    def binding_text(self) -> str:
        return " ".join(f"{k}={show(v)}" for k, v in self.bindings)

    def describe(self) -> str:
        text = f"{self.law} violated at {self.binding_text()}: lhs={show(self.lhs)} rhs={show(self.rhs)}"
        if self.note:
            text += f" ({self.note})"
        return text


@dataclass
class LawReport:
    subject: str
    laws: list = field(default_factory=list)
    cases: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def declare(self, *laws: str) -> "LawReport":
        for law in laws:
            if law not in self.laws:
                self.laws.append(law)
                self.cases.setdefault(law, 0)
                self.failures.setdefault(law, 0)
        return self

    def case(self, law: str, ok: bool, bindings=(), lhs=None, rhs=None, note: str = "") -> bool:
        self.declare(law)
        self.cases[law] += 1
        if not ok:
            self.failures[law] += 1
            if self.failures[law] == 1:
                self.violations.append(Violation(law, tuple(bindings), lhs, rhs, note))
        return ok

    @property
    def passed(self) -> bool:
        return not any(self.failures.values())

    def __bool__(self):
        return self.passed

    def failed(self, law: str) -> bool:
        return self.failures.get(law, 0) > 0

    def first(self, law: str) -> Violation | None:
        for v in self.violations:
            if v.law == law:
                return v
        return None

    def merge(self, other: "LawReport", prefix: str = "") -> "LawReport":
        for law in other.laws:
            name = prefix + law
            self.declare(name)
            self.cases[name] += other.cases[law]
            self.failures[name] += other.failures[law]
        for v in other.violations:
            self.violations.append(
                Violation(prefix + v.law, v.bindings, v.lhs, v.rhs, v.note))
        self.notes.extend(other.notes)
        return self

    def text(self) -> str:
        lines = [f"== {self.subject}"]
        for law in self.laws:
            n, bad = self.cases[law], self.failures[law]
            status = "pass" if bad == 0 else f"FAIL ({bad} of {n})"
            lines.append(f"  {law}: {status} [{n} cases]")
            v = self.first(law)
            if v is not None:
                lines.append(f"    first: {v.binding_text()}")
                lines.append(f"    lhs = {show(v.lhs)}")
                lines.append(f"    rhs = {show(v.rhs)}")
                if v.note:
                    lines.append(f"    note: {v.note}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)

    def machine(self, prefix: str = "") -> list[str]:
        """key=value lines for scripts."""
        out = [f"{prefix}status={'pass' if self.passed else 'fail'}"]
        for law in self.laws:
            out.append(f"{prefix}law.{law}={'pass' if self.failures[law] == 0 else 'fail'}")
            out.append(f"{prefix}cases.{law}={self.cases[law]}")
            v = self.first(law)
            if v is not None:
                out.append(f"{prefix}witness.{law}={v.binding_text()}")
                out.append(f"{prefix}lhs.{law}={show(v.lhs)}")
                out.append(f"{prefix}rhs.{law}={show(v.rhs)}")
        return out

    def __str__(self):
        return self.text()
