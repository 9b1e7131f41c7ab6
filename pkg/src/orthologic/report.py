"""Check reports: the uniform result type of every axiom checker."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class Violation:
    rule: str
    witness: tuple[int, ...]


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one structural check.

    ``passed`` holds iff ``violations`` is empty.  ``flags`` carries
    informational markers such as ``degenerate``; ``metrics`` carries
    named counters produced by the check (e.g. homomorphism counts).
    """

    title: str
    passed: bool
    violations: tuple[Violation, ...] = ()
    flags: tuple[str, ...] = ()
    metrics: tuple[tuple[str, int], ...] = ()

    def rules_failed(self) -> tuple[str, ...]:
        seen: list[str] = []
        for v in self.violations:
            if v.rule not in seen:
                seen.append(v.rule)
        return tuple(seen)

    def witness(self, rule: str) -> tuple[int, ...] | None:
        for v in self.violations:
            if v.rule == rule:
                return v.witness
        return None

    def metric(self, name: str) -> int:
        for key, value in self.metrics:
            if key == name:
                return value
        raise KeyError(name)

    def summary(self) -> str:
        if self.passed:
            extra = f" [{', '.join(self.flags)}]" if self.flags else ""
            return "pass" + extra
        return "FAIL (" + ", ".join(self.rules_failed()) + ")"


class ReportBuilder:
    """Accumulates violations during a scan.

    By default only the first witness per rule is kept (scans run in
    ascending index order, so that witness is the lexicographically
    least one); with ``all_witnesses`` every hit is recorded.
    """

    def __init__(self, title: str, all_witnesses: bool = False):
        self.title = title
        self.all_witnesses = all_witnesses
        self._order: list[str] = []
        self._hits: dict[str, list[tuple[int, ...]]] = {}
        self._flags: list[str] = []
        self._metrics: list[tuple[str, int]] = []

    def hit(self, rule: str, witness: tuple[int, ...]) -> None:
        if rule not in self._hits:
            self._order.append(rule)
            self._hits[rule] = [witness]
        elif self.all_witnesses:
            self._hits[rule].append(witness)

    def rule_failed(self, rule: str) -> bool:
        return rule in self._hits

    def failed(self) -> bool:
        return bool(self._hits)

    def flag(self, text: str) -> None:
        if text not in self._flags:
            self._flags.append(text)

    def metric(self, name: str, value: int) -> None:
        self._metrics.append((name, value))

    def done(self) -> CheckReport:
        violations = tuple(
            Violation(rule, tuple(w))
            for rule in self._order
            for w in self._hits[rule]
        )
        return CheckReport(
            title=self.title,
            passed=not violations,
            violations=violations,
            flags=tuple(self._flags),
            metrics=tuple(self._metrics),
        )


def render_report(report: CheckReport, names: Sequence[str] | None = None) -> list[str]:
    """Human-readable lines for a report; indices become names when given."""
    lines = [f"{report.title}: {'PASS' if report.passed else 'FAIL'}"
             + (f"  [{', '.join(report.flags)}]" if report.flags else "")]
    for v in report.violations:
        shown = ", ".join(
            names[i] if names is not None and 0 <= i < len(names) else str(i)
            for i in v.witness
        )
        lines.append(f"  {v.rule}: witness ({shown})")
    for key, value in report.metrics:
        lines.append(f"  {key} = {value}")
    return lines
