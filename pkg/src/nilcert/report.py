"""Report values returned by check-style operations."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a validation pass.

    ``violations`` lists every failed equation, in a deterministic order
    fixed by the checker's iteration order; the first entry names the
    first failing equation.
    """

    ok: bool
    violations: tuple[str, ...] = field(default_factory=tuple)

    @classmethod
    def passed(cls) -> "CheckReport":
        return cls(True, ())

    @classmethod
    def failed(cls, violations: list[str]) -> "CheckReport":
        return cls(False, tuple(violations))

    @classmethod
    def from_violations(cls, violations: list[str]) -> "CheckReport":
        return cls(not violations, tuple(violations))

    @property
    def first(self) -> str | None:
        return self.violations[0] if self.violations else None

    def merged(self, other: "CheckReport") -> "CheckReport":
        return CheckReport(self.ok and other.ok, self.violations + other.violations)

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": list(self.violations)}
