from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Verdict:
    """Outcome of a certificate check: truthy iff no violation was found."""

    ok: bool
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls, warnings=None) -> "Verdict":
        return cls(True, [], list(warnings or []))

    @classmethod
    def failed(cls, *violations: str) -> "Verdict":
        return cls(False, list(violations))

    @property
    def message(self) -> str:
        return self.violations[0] if self.violations else "ok"
