"""Validation reports and the package's exception types.

Validators never raise on a failed axiom: they return a :class:`Report`
listing every axiom they looked at and every violation found, each with a
witness. Constructors that cannot proceed raise :class:`ValidationError`
carrying such a report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class EsGamesError(Exception):
    """Base class for errors raised by this package."""


class ValidationError(EsGamesError, ValueError):
    def __init__(self, message: str, report: "Report | None" = None):
        super().__init__(message)
        self.report = report


class BoundExceeded(EsGamesError):
    """A size guard tripped (configurations, group order, search nodes)."""

    def __init__(self, what: str, bound: int, size: Any = None):
        msg = f"{what} exceeds bound {bound}"
        if size is not None:
            msg += f" (size {size})"
        super().__init__(msg)
        self.what = what
        self.bound = bound
        self.size = size


def jsonable(value: Any) -> Any:
    """Convert witnesses (frozensets, tuples, maps) into JSON-ready values."""
    if isinstance(value, (frozenset, set)):
        return sorted((jsonable(v) for v in value), key=repr)
    if isinstance(value, (tuple, list)):
        return [jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in sorted(value.items(), key=lambda kv: repr(kv[0]))}
    if value is None or isinstance(value, (str, int, float, bool)):
        return value
    return repr(value)


@dataclass
class Violation:
    axiom: str
    message: str
    witness: Any = None

    def __str__(self) -> str:
        return f"[{self.axiom}] {self.message}"


@dataclass
class Report:
    subject: str
    checked: list[str] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def check(self, axiom: str) -> None:
        if axiom not in self.checked:
            self.checked.append(axiom)

    def fail(self, axiom: str, message: str, witness: Any = None) -> None:
        self.check(axiom)
        self.violations.append(Violation(axiom, message, witness))

    def note(self, message: str) -> None:
        self.notes.append(message)

    def failed_axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def first(self, axiom: str | None = None) -> Violation | None:
        for v in self.violations:
            if axiom is None or v.axiom == axiom:
                return v
        return None

    def absorb(self, other: "Report", prefix: str = "") -> None:
        for axiom in other.checked:
            self.check(prefix + axiom)
        for v in other.violations:
            self.violations.append(Violation(prefix + v.axiom, v.message, v.witness))
        self.notes.extend(other.notes)

    def raise_if_failed(self, message: str | None = None) -> None:
        if self.violations:
            head = message or f"{self.subject} is invalid"
            raise ValidationError(f"{head}: {self.violations[0]}", self)

    def to_dict(self) -> dict[str, Any]:
        failed = self.failed_axioms()
        axioms = []
        for axiom in self.checked:
            entry: dict[str, Any] = {"axiom": axiom, "passed": axiom not in failed}
            witnesses = [jsonable(v.witness) for v in self.violations if v.axiom == axiom]
            messages = [v.message for v in self.violations if v.axiom == axiom]
            if messages:
                entry["messages"] = messages
                entry["witnesses"] = witnesses
            axioms.append(entry)
        return {"subject": self.subject, "passed": self.ok, "axioms": axioms, "notes": list(self.notes)}

    def __str__(self) -> str:
        if self.ok:
            return f"{self.subject}: ok ({len(self.checked)} axioms)"
        lines = [f"{self.subject}: {len(self.violations)} violation(s)"]
        lines.extend(f"  {v}" for v in self.violations)
        return "\n".join(lines)


class Verdict(tuple):
    """``(ok, witness)`` pair returned by yes/no checks."""

    def __new__(cls, ok: bool, witness: Any = None):
        return super().__new__(cls, (ok, witness))

    @property
    def ok(self) -> bool:
        return self[0]

    @property
    def witness(self) -> Any:
        return self[1]

    def __bool__(self) -> bool:
        return self[0]

    def __repr__(self) -> str:
        return f"Verdict(ok={self[0]}, witness={self[1]!r})"
