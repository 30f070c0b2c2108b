"""Pass/fail reports for law and invariant checks."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    law: str
    passed: bool
    detail: str = ""


@dataclass
class LawReport:
    title: str
    checks: list[Check] = field(default_factory=list)

    def record(self, law: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(law, bool(passed), detail))
        return bool(passed)

    def extend(self, other: "LawReport") -> None:
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def violations(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def laws(self) -> list[str]:
        seen: dict[str, None] = {}
        for c in self.checks:
            seen.setdefault(c.law, None)
        return list(seen)

    def summary_lines(self, laws=None) -> list[str]:
        """One ``<law> PASS|FAIL k/n`` line per law, then the first counterexample of each failure."""
        lines = []
        for law in laws if laws is not None else self.laws():
            checks = [c for c in self.checks if c.law == law]
            ok = sum(c.passed for c in checks)
            verdict = "PASS" if ok == len(checks) else "FAIL"
            lines.append(f"{law} {verdict} {ok}/{len(checks)}")
            bad = [c for c in checks if not c.passed]
            if bad:
                lines.append(f"  counterexample: {bad[0].detail}")
        return lines

    def __bool__(self) -> bool:
        return self.passed
