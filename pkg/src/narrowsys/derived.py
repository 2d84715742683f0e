"""Finite posets, names for systems over them, and the derived system.

``q <= p`` means ``q`` is the stronger condition.  On a finite poset every
filter is ``up(m)`` for some ``m``, so the maximal filters are ``up(m)`` for
the minimal elements ``m``.  These play the role of generic filters.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping

from .ordinal import Ordinal
from .report import ValidationReport, Violation
from .systems import (
    Branch,
    System,
    find_cofinal_branch,
    node_str,
    validate_system,
)

__all__ = [
    "FinitePoset",
    "SystemName",
    "Interpretation",
    "NameError_",
    "interpret",
    "validate_name",
    "derive_system",
    "branch_transfer_check",
    "TransferReport",
    "relation_label",
]


class NameError_(ValueError):
    """A name that is not downward closed or not level increasing."""


@dataclass
class FinitePoset:
    elements: tuple
    le: frozenset            # pairs (q, p) with q <= p; reflexive pairs are added

    def __post_init__(self):
        self.elements = tuple(sorted({str(e) for e in self.elements}))
        pairs = {(str(q), str(p)) for q, p in self.le}
        pairs |= {(e, e) for e in self.elements}
        self.le = frozenset(pairs)
        self._below = {p: frozenset(q for q in self.elements if (q, p) in self.le) for p in self.elements}
        self._above = {q: frozenset(p for p in self.elements if (q, p) in self.le) for q in self.elements}

    @classmethod
    def chain(cls, n: int) -> "FinitePoset":
        """``p0 < p1 < ... < p(n-1)``; the last element is the maximum, named ``1``."""
        names = [f"p{k}" for k in range(n - 1)] + ["1"]
        return cls(tuple(names), frozenset((names[a], names[b]) for a in range(n) for b in range(a, n)))

    @classmethod
    def vee(cls) -> "FinitePoset":
        return cls(("a", "b", "1"), frozenset({("a", "1"), ("b", "1")}))

    def leq(self, q, p) -> bool:
        return (q, p) in self.le

    def below(self, p) -> frozenset:
        return self._below[p]

    def above(self, q) -> frozenset:
        return self._above[q]

    def problems(self) -> list[Violation]:
        out = []
        E = set(self.elements)
        for q, p in sorted(self.le):
            if q not in E or p not in E:
                out.append(Violation("poset.malformed", (q, p), "unknown element"))
        for p, q in sorted(self.le):
            if p != q and (q, p) in self.le:
                out.append(Violation("poset.antisymmetric", (p, q), "distinct mutually below"))
        for a, b in sorted(self.le):
            for c in self.above(b) if b in self._above else ():
                if (a, c) not in self.le:
                    out.append(Violation("poset.transitive", (a, b, c), "missing composite"))
        if self.maximum() is None:
            out.append(Violation("poset.maximum", (), "no largest element"))
        return out

    def maximum(self):
        for p in self.elements:
            if all((q, p) in self.le for q in self.elements):
                return p
        return None

    def minimal(self) -> tuple:
        return tuple(m for m in self.elements if self.below(m) == {m})

    def maximal_filters(self) -> tuple:
        """``(m, up(m))`` for every minimal ``m``."""
        return tuple((m, self.above(m)) for m in self.minimal())

    def downsets(self) -> list[frozenset]:
        """All downward-closed subsets, in a fixed order."""
        out = []
        els = self.elements
        for mask in range(1 << len(els)):
            s = frozenset(e for k, e in enumerate(els) if mask >> k & 1)
            if all(self.below(p) <= s for p in s):
                out.append(s)
        return out


@dataclass
class SystemName:
    levels: tuple
    width_at: dict
    tau: int
    decided: dict = field(default_factory=dict)   # (i, u, v) -> frozenset of conditions

    def __post_init__(self):
        self.levels = tuple(sorted({Ordinal.coerce(a) for a in self.levels}))
        self.width_at = {Ordinal.coerce(a): int(k) for a, k in self.width_at.items()}
        self.decided = {k: frozenset(str(p) for p in v) for k, v in self.decided.items() if v}

    def close_downward(self, P: FinitePoset) -> "SystemName":
        dec = {}
        for k, ps in self.decided.items():
            dec[k] = frozenset(q for p in ps if p in P.elements for q in P.below(p))
        return SystemName(self.levels, self.width_at, self.tau, dec)


@dataclass
class Interpretation:
    filter_min: str
    filter: frozenset
    system: System


def relation_label(i: int, p: str) -> str:
    return f"{i}@{p}"


def interpret(N: SystemName, P: FinitePoset, m: str) -> Interpretation:
    """The system read off along the filter ``up(m)``."""
    G = P.above(m)
    rels = {str(i): set() for i in range(N.tau)}
    for (i, u, v), ps in N.decided.items():
        if ps & G:
            rels[str(i)].add((u, v))
    S = System.fast(N.levels, dict(N.width_at), {k: frozenset(e) for k, e in rels.items()})
    return Interpretation(m, G, S)


def _name_problems(N: SystemName, P: FinitePoset) -> list[Violation]:
    out = list(P.problems())
    E = set(P.elements)
    for (i, u, v), ps in sorted(N.decided.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2])):
        if not 0 <= i < N.tau:
            out.append(Violation("name.malformed", (i, u, v), f"relation index outside tau={N.tau}"))
        for n in (u, v):
            if n[0] not in N.width_at or not 0 <= n[1] < N.width_at[n[0]]:
                out.append(Violation("name.malformed", (i, u, v), f"{node_str(n)} is not a node"))
        if u[0] >= v[0]:
            out.append(Violation("name.level-increasing", (i, u, v), "forced edge does not raise the level"))
        for p in sorted(ps):
            if p not in E:
                out.append(Violation("name.malformed", (i, u, v, p), "unknown condition"))
                continue
            for q in sorted(P.below(p) - ps):
                out.append(Violation("name.downward-closure", (i, u, v, p, q), f"{p} forces the edge but {q} does not"))
    return out


def validate_name(N: SystemName, P: FinitePoset) -> ValidationReport:
    """Structural checks on the name plus a system check along every maximal filter.

    Filters ``up(p)`` for non-minimal ``p`` are not generic; their outcome is
    recorded as a fact only.
    """
    rep = ValidationReport("name", _name_problems(N, P), {"conditions": len(P.elements)})
    if any(v.clause.startswith("poset.") for v in rep.violations):
        return rep
    minimal = set(P.minimal())
    for p in P.elements:
        sub = validate_system(interpret(N, P, p).system)
        if p in minimal:
            rep = rep.merged(ValidationReport(sub.subject, sub.violations, {}), f"filter[{p}].")
        status = "valid" if sub.ok else "invalid " + ",".join(sorted(sub.clauses()))
        rep.facts[f"interpretation[{p}]"] = status + ("" if p in minimal else " (not maximal)")
    return rep


def derive_system(N: SystemName, P: FinitePoset, check: bool = True) -> System:
    """Relations ``R_(i,p)``: ``u < v`` iff ``p`` is in ``decided(i, u, v)``."""
    if check:
        bad = _name_problems(N, P)
        if bad:
            raise NameError_(bad[0].render())
    rels = {relation_label(i, p): set() for i in range(N.tau) for p in P.elements}
    for (i, u, v), ps in N.decided.items():
        for p in ps:
            rels[relation_label(i, p)].add((u, v))
    return System.fast(N.levels, dict(N.width_at), {k: frozenset(e) for k, e in rels.items()})


@dataclass
class TransferReport:
    checked: int = 0
    failures: list = field(default_factory=list)
    interpretations_branchless: bool = False
    derived_branchless: bool = False

    @property
    def implication_ok(self) -> bool:
        return not self.interpretations_branchless or self.derived_branchless

    @property
    def ok(self) -> bool:
        return not self.failures and self.implication_ok

    def render(self) -> str:
        lines = [f"transfer {'pass' if self.ok else 'fail'} checked={self.checked}",
                 f"interpretations-branchless {'yes' if self.interpretations_branchless else 'no'}",
                 f"derived-branchless {'yes' if self.derived_branchless else 'no'}"]
        lines += [f"failure {rel} filter={m} " + " ".join(node_str(n) for n in sorted(b))
                  for rel, m, b in self.failures]
        return "\n".join(lines) + "\n"


def branch_transfer_check(N: SystemName, P: FinitePoset, fraction: float = 1.0,
                          check: bool = True) -> TransferReport:
    """Each branch through ``R_(i,p)`` must be a branch through ``i`` along every maximal filter holding ``p``.

    Branches are pairwise-comparable sets over the same nodes, so it is
    enough to check every comparable pair; a failing pair is itself a branch
    and is reported as the witness.
    """
    D = derive_system(N, P, check)
    out = TransferReport()
    filters = P.maximal_filters()
    interps = {m: interpret(N, P, m).system for m, _ in filters}
    for i in range(N.tau):
        for p in P.elements:
            rel = relation_label(i, p)
            holders = [m for m, G in filters if p in G]
            for u, v in sorted(D.relations[rel]):
                for m in holders:
                    out.checked += 1
                    if not interps[m].comparable(str(i), u, v):
                        out.failures.append((rel, m, frozenset({u, v})))
    out.interpretations_branchless = all(find_cofinal_branch(S, fraction).branch is None
                                         for S in interps.values())
    out.derived_branchless = find_cofinal_branch(D, fraction).branch is None
    return out
