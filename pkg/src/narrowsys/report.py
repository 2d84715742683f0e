from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


def _key(x: Any) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(_key(y) for y in x) + ")"
    return str(x)


@dataclass(frozen=True)
class Violation:
    clause: str
    witness: tuple = ()
    detail: str = ""

    def sort_key(self):
        return (self.clause, tuple(_key(w) for w in self.witness), self.detail)

    def render(self) -> str:
        wit = " ".join(_key(w) for w in self.witness)
        out = f"violation {self.clause}"
        if wit:
            out += f" {wit}"
        if self.detail:
            out += f" : {self.detail}"
        return out


@dataclass
class ValidationReport:
    """Violations found by a validator plus a few computed facts.

    Violations are deduplicated and sorted on construction so that reports are
    independent of the iteration order of the input tables.
    """

    subject: str
    violations: list[Violation] = field(default_factory=list)
    facts: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        uniq = {v.sort_key(): v for v in self.violations}
        self.violations = [uniq[k] for k in sorted(uniq)]

    @property
    def ok(self) -> bool:
        return not self.violations

    def clauses(self) -> set[str]:
        return {v.clause for v in self.violations}

    def by_clause(self, clause: str) -> list[Violation]:
        return [v for v in self.violations if v.clause == clause]

    def merged(self, other: "ValidationReport", prefix: str = "") -> "ValidationReport":
        extra = [Violation(prefix + v.clause, v.witness, v.detail) for v in other.violations]
        facts = dict(self.facts)
        facts.update({prefix + k: v for k, v in other.facts.items()})
        return ValidationReport(self.subject, self.violations + extra, facts)

    def render(self) -> str:
        lines = [f"report {self.subject} {'valid' if self.ok else 'invalid'}"]
        lines += [f"fact {k} = {_key(self.facts[k])}" for k in sorted(self.facts)]
        lines += [v.render() for v in self.violations]
        return "\n".join(lines) + "\n"
