"""C-sequences, square-sequence clause validators and thread search.

Everything here works on explicit truncations: a sequence is known on a
finite set of levels (or by a rule), and clubs are :class:`OrdinalSet` values.
Stationarity and cofinality classes cannot be read off a truncation, so the
validators that need them take a caller-designated set instead.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .ordinal import (
    OMEGA,
    ZERO,
    Kind,
    Ordinal,
    classify,
    finite,
    fundamental_index,
    predecessor,
)
from .ordsets import OrdinalSet, Tail
from .report import ValidationReport, Violation

__all__ = [
    "CSequence",
    "CollectionSequence",
    "IndexedSequence",
    "ThreadResult",
    "canonical_club",
    "build_canonical",
    "limit_levels_upto",
    "validate_square",
    "validate_indexed",
    "validate_geq_kappa",
    "validate_otp_flag",
    "find_thread",
    "is_thread",
    "thread_atoms",
    "validate_poset_condition",
    "end_extends",
]


def _is_limit(a: Ordinal) -> bool:
    return classify(a) is Kind.LIMIT


def limit_levels_upto(bound) -> list[Ordinal] | None:
    """Limit ordinals ``<= bound`` when there are finitely many (``bound < w^2``)."""
    bound = Ordinal.coerce(bound)
    if bound.is_finite:
        return []
    if bound.leading_exponent > 1:
        return None
    return [Ordinal(((finite(1), k),)) for k in range(1, bound.terms[0][1] + 1)]


def canonical_club(alpha) -> OrdinalSet:
    """``{0}`` together with the canonical fundamental sequence of a limit; ``{a}`` for ``a + 1``."""
    alpha = Ordinal.coerce(alpha)
    kind = classify(alpha)
    if kind is Kind.ZERO:
        return OrdinalSet()
    if kind is Kind.SUCCESSOR:
        return OrdinalSet([predecessor(alpha)])
    return OrdinalSet([ZERO, Tail(alpha, 0)])


class CSequence:
    """One club per index, from an explicit table and/or a rule.

    With ``successor_rule`` set, ``C_(a+1) = {a}`` for every successor not in
    the table.  ``rule`` supplies clubs at limits that are not in the table.
    """

    def __init__(self, bound, assign: Mapping | None = None,
                 rule: Callable[[Ordinal], OrdinalSet] | None = None,
                 successor_rule: bool = True, name: str = "explicit"):
        self.bound = Ordinal.coerce(bound)
        self.assign = {Ordinal.coerce(k): v for k, v in (assign or {}).items()}
        self.rule = rule
        self.successor_rule = successor_rule
        self.name = name

    def club(self, alpha) -> OrdinalSet:
        alpha = Ordinal.coerce(alpha)
        if alpha in self.assign:
            return self.assign[alpha]
        kind = classify(alpha)
        if kind is Kind.SUCCESSOR and self.successor_rule:
            return OrdinalSet([predecessor(alpha)])
        if kind is Kind.LIMIT and self.rule is not None and alpha <= self.bound:
            return self.rule(alpha)
        raise KeyError(f"no club assigned at {alpha}")

    def clubs(self, alpha) -> tuple[OrdinalSet, ...] | None:
        try:
            return (self.club(alpha),)
        except KeyError:
            return None

    def levels(self) -> list[Ordinal]:
        """Indices with an explicit or derivable limit club, when finitely many."""
        if self.rule is not None:
            lv = limit_levels_upto(self.bound)
            if lv is not None:
                return sorted(set(lv) | set(self.assign))
        return sorted(self.assign)

    def as_collection(self) -> "CollectionSequence":
        return CollectionSequence(
            self.bound,
            {a: (c,) for a, c in self.assign.items() if _is_limit(a)},
            rule=(lambda a: (self.rule(a),)) if self.rule else None,
        )


def build_canonical(bound) -> CSequence:
    return CSequence(bound, {}, rule=canonical_club, successor_rule=True, name="canonical")


class CollectionSequence:
    """A finite collection of clubs at each limit level."""

    def __init__(self, bound, assign: Mapping | None = None,
                 rule: Callable[[Ordinal], tuple] | None = None,
                 mu=None, lambda_bound: int | None = None, variant: str = "bracket"):
        self.bound = Ordinal.coerce(bound)
        self.assign = {Ordinal.coerce(k): tuple(v) for k, v in (assign or {}).items()}
        self.rule = rule
        self.mu = None if mu is None else Ordinal.coerce(mu)
        self.lambda_bound = lambda_bound
        self.variant = variant

    def clubs(self, alpha) -> tuple[OrdinalSet, ...] | None:
        alpha = Ordinal.coerce(alpha)
        if alpha in self.assign:
            return self.assign[alpha]
        if self.rule is not None and _is_limit(alpha) and alpha <= self.bound:
            return tuple(self.rule(alpha))
        return None

    def levels(self) -> list[Ordinal]:
        if self.rule is not None:
            lv = limit_levels_upto(self.bound)
            if lv is not None:
                return sorted(set(lv) | set(self.assign))
        return sorted(self.assign)


class IndexedSequence:
    """Matrix ``C[a, i]`` for limit ``a`` and ``i(a) <= i < kappa``."""

    def __init__(self, bound, kappa: int, i_of: Mapping, assign: Mapping):
        self.bound = Ordinal.coerce(bound)
        self.kappa = kappa
        self.i_of = {Ordinal.coerce(k): v for k, v in i_of.items()}
        self.assign = {(Ordinal.coerce(a), i): c for (a, i), c in assign.items()}

    def levels(self) -> list[Ordinal]:
        return sorted(set(self.i_of) | {a for a, _ in self.assign})

    def club(self, alpha, i: int) -> OrdinalSet | None:
        return self.assign.get((Ordinal.coerce(alpha), i))

    def indices(self, alpha) -> range:
        lo = self.i_of.get(Ordinal.coerce(alpha))
        return range(0) if lo is None else range(lo, self.kappa)

    def clubs(self, alpha) -> tuple[OrdinalSet, ...] | None:
        alpha = Ordinal.coerce(alpha)
        if alpha not in self.i_of:
            return None
        return tuple(c for i in self.indices(alpha) if (c := self.club(alpha, i)) is not None)


# -- validators --------------------------------------------------------------

def _check_levels(seq, levels) -> tuple[list[Ordinal], list[Violation]]:
    found = []
    if levels is None:
        levels = seq.levels()
        expected = limit_levels_upto(seq.bound)
        if expected is not None:
            found += [Violation("malformed", (a,), "missing limit level")
                      for a in expected if seq.clubs(a) is None]
    levels = sorted({Ordinal.coerce(a) for a in levels})
    for a in levels:
        if not _is_limit(a):
            found.append(Violation("malformed", (a,), "level is not a limit ordinal"))
        elif seq.clubs(a) is None:
            found.append(Violation("malformed", (a,), "missing limit level"))
    return [a for a in levels if _is_limit(a) and seq.clubs(a) is not None], found


def _coherence(seq, beta: Ordinal, club: OrdinalSet, clause: str,
               domain: set | None = None) -> list[Violation]:
    """``a in C'`` (``a < beta``) must give ``C & a`` among the clubs at ``a``."""
    out = []
    for a in club.limit_points():
        if a >= beta:
            continue
        if domain is not None and a not in domain:
            out.append(Violation(clause, (a, beta), f"limit point {a} outside the domain"))
            continue
        at = seq.clubs(a)
        if at is None or club.restrict(a) not in at:
            out.append(Violation(clause, (a, beta), f"{club.restrict(a)} not assigned at {a}"))
    return out


def validate_square(seq, variant: str = "bracket", mu=None, lambda_bound: int | None = None,
                    levels: Iterable | None = None) -> ValidationReport:
    """Clause check for jensen(mu, <lambda) and bracket(kappa, <lambda) sequences.

    Thread non-existence is not examined here; see :func:`find_thread`.
    """
    if variant not in ("jensen", "bracket"):
        raise ValueError(f"unknown variant {variant!r}")
    mu = getattr(seq, "mu", None) if mu is None else Ordinal.coerce(mu)
    lam = getattr(seq, "lambda_bound", None) if lambda_bound is None else lambda_bound
    if variant == "jensen" and mu is None:
        raise ValueError("jensen variant needs mu")
    checked, found = _check_levels(seq, levels)
    for beta in checked:
        clubs = seq.clubs(beta)
        if len(clubs) < 1 or (lam is not None and len(clubs) >= lam):
            found.append(Violation("1.cardinality", (beta,), f"{len(clubs)} clubs, bound <{lam}"))
        for c in clubs:
            found += [Violation("1.club", (beta,), f"{c}: {p}") for p in c.club_problems(beta)]
            found += _coherence(seq, beta, c, "2.coherence")
            if variant == "jensen" and c.order_type() > mu:
                found.append(Violation("3.order-type", (beta,), f"otp {c.order_type()} > {mu}"))
    facts = {"levels": len(checked), "variant": variant}
    return ValidationReport(f"square-{variant}", found, facts)


def validate_indexed(seq: IndexedSequence, levels: Iterable | None = None) -> ValidationReport:
    found: list[Violation] = []
    lv = sorted({Ordinal.coerce(a) for a in (seq.levels() if levels is None else levels)})
    expected = limit_levels_upto(seq.bound) if levels is None else None
    for a in sorted(set(expected or []) - set(lv)):
        found.append(Violation("malformed", (a,), "missing limit level"))
    limits = [a for a in lv if _is_limit(a)]
    for a in lv:
        if not _is_limit(a):
            found.append(Violation("malformed", (a,), "level is not a limit ordinal"))
    for a in limits:
        ia = seq.i_of.get(a)
        if ia is None:
            found.append(Violation("1.index", (a,), "i(a) undefined"))
            continue
        if not 0 <= ia < seq.kappa:
            found.append(Violation("1.index", (a,), f"i(a) = {ia} not below {seq.kappa}"))
        for i in seq.indices(a):
            c = seq.club(a, i)
            if c is None:
                found.append(Violation("malformed", (a, i), "missing club"))
                continue
            found += [Violation("2.club", (a, i), p) for p in c.club_problems(a)]
            nxt = seq.club(a, i + 1)
            if nxt is not None and not c.issubset(nxt):
                found.append(Violation("3.nesting", (a, i), f"C[{a},{i}] not inside C[{a},{i + 1}]"))
    for beta in limits:
        for i in seq.indices(beta):
            c = seq.club(beta, i)
            if c is None:
                continue
            for a in c.limit_points():
                if a >= beta:
                    continue
                ia = seq.i_of.get(a)
                if ia is None or ia > i:
                    found.append(Violation("4.coherence", (a, beta, i), f"i({a}) = {ia} > {i}"))
                    continue
                if seq.club(a, i) != c.restrict(a):
                    found.append(Violation("4.coherence", (a, beta, i), f"C[{beta},{i}] & {a} != C[{a},{i}]"))
        for a in limits:
            if a >= beta:
                break
            if not any(a in c.limit_points() for i in seq.indices(beta)
                       if (c := seq.club(beta, i)) is not None):
                found.append(Violation("5.cover", (a, beta), f"{a} is a limit point of no C[{beta},i]"))
    return ValidationReport("indexed-square", found, {"levels": len(limits), "kappa": seq.kappa})


def validate_geq_kappa(seq, kappa, mu, designated: Iterable, levels: Iterable | None = None) -> ValidationReport:
    """Check a partial sequence ``<C_a | a in A>`` (``A`` = the assigned levels).

    ``designated`` stands for the ordinals of cofinality ``>= kappa`` in the
    truncation; it must lie inside ``A``.
    """
    mu = Ordinal.coerce(mu)
    domain = set(seq.levels()) if levels is None else {Ordinal.coerce(a) for a in levels}
    found = []
    for d in sorted(Ordinal.coerce(x) for x in designated):
        if d not in domain or seq.clubs(d) is None:
            found.append(Violation("1.domain", (d,), "designated ordinal outside A"))
    for a in sorted(domain):
        if not _is_limit(a):
            found.append(Violation("1.domain", (a,), "A contains a non-limit"))
    for beta in sorted(domain):
        clubs = seq.clubs(beta)
        if not clubs or not _is_limit(beta):
            continue
        for c in clubs:
            found += [Violation("2.club", (beta,), p) for p in c.club_problems(beta)]
            if c.order_type() > mu:
                found.append(Violation("2.order-type", (beta,), f"otp {c.order_type()} > {mu}"))
            found += _coherence(seq, beta, c, "3.coherence", domain)
    return ValidationReport("square-geq-kappa", found, {"kappa": Ordinal.coerce(kappa), "mu": mu})


def validate_otp_flag(seq, kappa, S: Iterable, levels: Iterable | None = None) -> ValidationReport:
    """Designated-set surrogate for the order-type characterisation.

    For every ``a`` in ``S``: ``otp(C_a) = kappa`` and ``a`` is a limit point
    of no ``C_b`` with ``b > a`` among the checked levels.
    """
    kappa = Ordinal.coerce(kappa)
    lv = sorted({Ordinal.coerce(a) for a in (seq.levels() if levels is None else levels)})
    found = []
    for a in sorted(Ordinal.coerce(x) for x in S):
        clubs = seq.clubs(a)
        if not clubs:
            found.append(Violation("malformed", (a,), "no club at designated ordinal"))
            continue
        for c in clubs:
            if c.order_type() != kappa:
                found.append(Violation("otp", (a,), f"otp {c.order_type()} != {kappa}"))
        for b in lv:
            if b <= a:
                continue
            for c in seq.clubs(b) or ():
                if a in c.limit_points():
                    found.append(Violation("limit-point", (a, b), f"{a} is a limit point of C_{b}"))
    return ValidationReport("otp-flag", found, {"designated": len(list(S)) if not isinstance(S, (set, frozenset, list, tuple)) else len(S)})


# -- threads -------------------------------------------------------------------

@dataclass
class ThreadResult:
    status: str                      # "found" | "none" | "cap-exceeded"
    club: OrdinalSet | None = None
    index: int | None = None         # fixed-index mode: the index i*
    explored: int = 0

    @property
    def found(self) -> bool:
        return self.status == "found"

    def render(self) -> str:
        if self.status != "found":
            return f"thread {self.status}\n"
        idx = "" if self.index is None else f" idx={self.index}"
        return f"thread found{idx} {self.club}\n"


def _default_top(seq) -> Ordinal:
    lv = [a for a in seq.levels() if _is_limit(a) and a <= seq.bound]
    if not lv:
        raise ValueError("sequence has no limit levels")
    return lv[-1]


def _accepting(seq, mode: str, index: int | None):
    """Map level -> set of clubs that ``D & level`` may equal."""
    out = {}
    for a in seq.levels():
        if isinstance(seq, IndexedSequence):
            if mode == "fixed_index":
                c = seq.club(a, index) if index in seq.indices(a) else None
                out[a] = frozenset([c] if c is not None else [])
            else:
                out[a] = frozenset(seq.clubs(a) or ())
        else:
            out[a] = frozenset(seq.clubs(a) or ())
    return out


def is_thread(seq, D: OrdinalSet, top=None, mode: str = "full", index: int | None = None) -> bool:
    """Thread condition on a truncation.

    ``D`` must be club in the top marker level and, for every limit point
    ``a`` of ``D`` up to and including the top, ``D & a`` must be one of the
    clubs at ``a`` (the one with index ``index`` in fixed-index mode).
    """
    top = _default_top(seq) if top is None else Ordinal.coerce(top)
    if not D.is_club_in(top):
        return False
    acc = _accepting(seq, mode, index)
    for a in D.limit_points() + ((top,) if top not in D.limit_points() else ()):
        if a > top:
            return False
        if D.restrict(a) not in acc.get(a, ()):
            return False
    return True


def thread_atoms(seq, top=None) -> tuple:
    """Disjoint ascending pieces such that every club up to the top is a union of some of them.

    Tails with the same limit are cut at the largest start in use, and a tail is
    also cut above any point or smaller limit falling inside its range; the
    entries cut off become points.
    """
    top = _default_top(seq) if top is None else Ordinal.coerce(top)
    points: set = set()
    lo: dict = {}
    cut: dict = {}
    for a in seq.levels():
        if a > top:
            continue
        for c in seq.clubs(a) or ():
            for p in c.pieces:
                if isinstance(p, Tail):
                    lo[p.limit] = min(p.start, lo.get(p.limit, p.start))
                    cut[p.limit] = max(p.start, cut.get(p.limit, p.start))
                else:
                    points.add(p)
    changed = True
    while changed:
        changed = False
        for g in cut:
            points.update(Tail(g, k).first for k in range(lo[g], cut[g]))
        blockers = points | set(cut)
        for g in sorted(cut):
            first = Tail(g, cut[g]).first
            inside = [x for x in blockers if first <= x < g]
            if inside:
                m, hit = fundamental_index(g, max(inside))
                cut[g] = m + 1 if hit else m
                changed = True
    atoms = sorted(list(points) + [Tail(g, s) for g, s in cut.items()],
                   key=lambda p: p.first if isinstance(p, Tail) else p)
    return tuple(atoms)


def find_thread(seq, mode: str = "full", top=None, cap: int | None = None) -> ThreadResult:
    """Search closures of subsets of :func:`thread_atoms` for a thread.

    Depth-first over the atoms in increasing order.  A partial candidate is
    kept only while it is an initial segment of some club in the sequence, and
    it is checked against the clubs at each of its limit points as soon as
    that limit point is reached.  ``cap`` bounds the number of atoms in ``D``;
    when the cap cut the search and nothing was found, the status is
    ``"cap-exceeded"`` rather than ``"none"``.
    """
    if mode not in ("full", "fixed_index"):
        raise ValueError(f"unknown mode {mode!r}")
    top = _default_top(seq) if top is None else Ordinal.coerce(top)
    atoms = thread_atoms(seq, top)
    all_clubs = [c for a in seq.levels() for c in (seq.clubs(a) or ())]
    if mode == "fixed_index" and not isinstance(seq, IndexedSequence):
        raise ValueError("fixed_index mode needs an indexed sequence")
    indices = range(seq.kappa) if mode == "fixed_index" else [None]
    explored = 0
    cap_hit = False
    for idx in indices:
        acc = _accepting(seq, mode, idx)
        state = {"explored": 0, "cap": False}
        res = _thread_dfs(atoms, acc, all_clubs, top, cap, state)
        explored += state["explored"]
        cap_hit |= state["cap"]
        if res is not None:
            return ThreadResult("found", res, idx, explored)
    return ThreadResult("cap-exceeded" if cap_hit else "none", None, None, explored)


def _thread_dfs(atoms, acc, all_clubs, top, cap, state):
    n = len(atoms)

    def frontier(k):
        if k >= n:
            return top
        a = atoms[k]
        return a.first if isinstance(a, Tail) else a

    def prefix_ok(pieces, k):
        cur = OrdinalSet(pieces)
        f = frontier(k)
        return any(c.restrict(f) == cur for c in all_clubs)

    def rec(k, pieces, used):
        state["explored"] += 1
        if pieces and isinstance(pieces[-1], Tail):
            g = pieces[-1].limit
            cur = OrdinalSet(pieces)
            if cur.restrict(g) not in acc.get(g, ()):
                return None
            if g == top:
                return cur
            # closure: g itself joins D
            if k < n and not isinstance(atoms[k], Tail) and atoms[k] == g:
                k += 1
            pieces = pieces + [g]
        if k >= n:
            return None
        if not prefix_ok(pieces, k):
            return None
        atom = atoms[k]
        if cap is not None and used >= cap:
            state["cap"] = True
        else:
            hit = rec(k + 1, pieces + [atom], used + 1)
            if hit is not None:
                return hit
        return rec(k + 1, pieces, used)

    return rec(0, [], 0)


# -- forcing conditions ----------------------------------------------------------

def _seq_limits_upto(seq, gamma) -> list[Ordinal]:
    lv = limit_levels_upto(gamma)
    if lv is None:
        lv = [a for a in seq.levels() if a <= gamma]
    return lv


def validate_poset_condition(kind: str, candidate, params: Mapping | None = None,
                             stronger=None) -> ValidationReport:
    """Clause-by-clause validity of a condition in one of the square posets.

    ``kind`` is one of ``S``, ``T_kappa``, ``Q``, ``T``, ``P``, ``B``.  When
    ``stronger`` is given it must also be a valid condition, and the report
    records whether it end-extends ``candidate``.
    """
    params = dict(params or {})
    checker = _POSET_CHECKS.get(kind)
    if checker is None:
        raise ValueError(f"unknown poset kind {kind!r}")
    rep = checker(candidate, params)
    if stronger is not None:
        other = checker(stronger, params)
        rep = rep.merged(other, "stronger.")
        ext = end_extends(kind, stronger, candidate)
        rep.facts["end-extends"] = ext
        if not ext:
            rep = ValidationReport(rep.subject, rep.violations + [
                Violation("order", (), "stronger condition does not end-extend")], rep.facts)
    return rep


def _check_S_Q(cand: CollectionSequence, params, kind: str) -> ValidationReport:
    gamma = cand.bound
    lam = params.get("lambda_bound", cand.lambda_bound)
    found = []
    if kind == "S":
        mu = Ordinal.coerce(params["mu"])
        if mu.is_finite:
            found.append(Violation("1.height", (mu,), "mu must be infinite"))
    else:
        mu = None
        kap = params.get("kappa")
        if kap is not None and gamma >= Ordinal.coerce(kap):
            found.append(Violation("1.height", (gamma,), f"top {gamma} not below {kap}"))
    for a in _seq_limits_upto(cand, gamma):
        clubs = cand.clubs(a)
        if clubs is None:
            found.append(Violation("malformed", (a,), "missing limit level"))
            continue
        if len(clubs) < 1 or (lam is not None and len(clubs) >= lam):
            found.append(Violation("3.cardinality", (a,), f"{len(clubs)} clubs, bound <{lam}"))
        for c in clubs:
            found += [Violation("2.club", (a,), p) for p in c.club_problems(a)]
            if mu is not None and c.order_type() > mu:
                found.append(Violation("2.order-type", (a,), f"otp {c.order_type()} > {mu}"))
            found += _coherence(cand, a, c, "4.coherence")
    for a in cand.levels():
        if a > gamma:
            found.append(Violation("malformed", (a,), f"level above the top {gamma}"))
    return ValidationReport(f"condition-{kind}", found, {"top": gamma})


def _check_thread_condition(cand: OrdinalSet, params, kind: str) -> ValidationReport:
    seq = params["sequence"]
    found = []
    if not cand.is_closed_bounded() and cand:
        found.append(Violation("1.closed-bounded", (), f"{cand} is not closed and bounded"))
    if kind == "T_kappa":
        kap = Ordinal.coerce(params["kappa"])
        if cand.order_type() >= kap:
            found.append(Violation("1.order-type", (), f"otp {cand.order_type()} >= {kap}"))
    for a in cand.limit_points():
        at = seq.clubs(a)
        if at is None or cand.restrict(a) not in at:
            found.append(Violation("2.coherence", (a,), f"{cand.restrict(a)} not assigned at {a}"))
    return ValidationReport(f"condition-{kind}", found, {"otp": cand.order_type()})


def _check_P(cand: IndexedSequence, params) -> ValidationReport:
    gamma = cand.bound
    found = []
    if not _is_limit(gamma):
        found.append(Violation("1.top", (gamma,), "top is not a limit ordinal"))
    lam = params.get("lambda")
    if lam is not None and gamma >= Ordinal.coerce(lam):
        found.append(Violation("1.top", (gamma,), f"top not below {lam}"))
    rep = validate_indexed(cand, _seq_limits_upto(cand, gamma))
    return ValidationReport("condition-P", found + rep.violations, {"top": gamma})


def _check_B(cand, params) -> ValidationReport:
    mu = Ordinal.coerce(params["mu"])
    designated = {Ordinal.coerce(x) for x in params.get("designated", ())}
    s = sorted(cand.levels())
    found = []
    if not s:
        return ValidationReport("condition-B", [Violation("1.support", (), "empty support")], {})
    gamma = s[-1]
    for d in sorted(designated):
        if d < gamma and d not in s:
            found.append(Violation("2.designated", (d,), "designated ordinal below the top missing"))
    dom = set(s)
    for b in s:
        for c in cand.clubs(b) or ():
            found += [Violation("3.club", (b,), p) for p in c.club_problems(b)]
            if c.order_type() > mu:
                found.append(Violation("3.order-type", (b,), f"otp {c.order_type()} > {mu}"))
            found += _coherence(cand, b, c, "4.coherence", dom)
    return ValidationReport("condition-B", found, {"top": gamma})


_POSET_CHECKS = {
    "S": lambda c, p: _check_S_Q(c, p, "S"),
    "Q": lambda c, p: _check_S_Q(c, p, "Q"),
    "T_kappa": lambda c, p: _check_thread_condition(c, p, "T_kappa"),
    "T": lambda c, p: _check_thread_condition(c, p, "T"),
    "P": _check_P,
    "B": _check_B,
}


def end_extends(kind: str, q, p) -> bool:
    """Whether ``q`` end-extends ``p`` in the poset ``kind``."""
    if kind in ("T", "T_kappa"):
        top = p.max()
        if top is None:
            return True
        return q.restrict(top).with_points(top) == p
    if kind == "P":
        if q.bound < p.bound:
            return False
        for a in _seq_limits_upto(p, p.bound):
            if q.i_of.get(a) != p.i_of.get(a):
                return False
            if any(q.club(a, i) != p.club(a, i) for i in p.indices(a)):
                return False
        return True
    if kind == "B":
        sp, sq = sorted(p.levels()), sorted(q.levels())
        if not sp:
            return True
        if [a for a in sq if a <= sp[-1]] != sp:
            return False
        return all(q.clubs(a) == p.clubs(a) for a in sp)
    # S and Q
    if q.bound < p.bound:
        return False
    return all(_as_set(q.clubs(a)) == _as_set(p.clubs(a)) for a in _seq_limits_upto(p, p.bound))


def _as_set(x):
    return None if x is None else frozenset(x)
