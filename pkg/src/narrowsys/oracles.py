"""Brute-force reference implementations used to cross-check the main modules.

Nothing here shares code paths with :mod:`walks`, :mod:`csequence` or
:mod:`systems` beyond the :class:`Ordinal` value type and its comparison.
Clubs are handled as plain element lists, walks are recomputed without any
cache, and thread existence is decided from its characterisation through the
top level.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .ordinal import Ordinal, parse_ordinal

__all__ = [
    "fs",
    "canonical_elements_upto",
    "naive_rho",
    "naive_lambda",
    "naive_thread_exists",
    "subset_thread_exists",
]


def _terms(a: Ordinal) -> list:
    return list(a.terms)


def _mk(terms) -> Ordinal:
    return Ordinal(tuple(terms))


def _one() -> Ordinal:
    return parse_ordinal("1")


def fs(a: Ordinal, n: int) -> Ordinal:
    """Canonical fundamental sequence, written out from the defining rules."""
    t = _terms(a)
    e, c = t[-1]
    head = t[:-1] + ([(e, c - 1)] if c > 1 else [])
    if e.is_zero:
        raise ValueError("successor has no fundamental sequence")
    et = _terms(e)
    if et[-1][0].is_zero:        # e = e' + 1
        k = et[-1][1]
        e_pred = _mk(et[:-1] + ([(et[-1][0], k - 1)] if k > 1 else []))
        return _mk(head + [(e_pred, n + 1)])
    return _mk(head + [(fs(e, n), 1)])


def _is_limit(a: Ordinal) -> bool:
    return not a.is_zero and not a.terms[-1][0].is_zero


def _pred(a: Ordinal) -> Ordinal:
    t = _terms(a)
    e, c = t[-1]
    return _mk(t[:-1] + ([(e, c - 1)] if c > 1 else []))


def canonical_elements_upto(beta: Ordinal, x: Ordinal) -> list[Ordinal]:
    """Elements of the canonical club at ``beta`` that are ``<= x``, ascending."""
    if beta.is_zero:
        return []
    if not _is_limit(beta):
        p = _pred(beta)
        return [p] if p <= x else []
    out = [Ordinal(())]
    n = 0
    while True:
        y = fs(beta, n)
        if y > x:
            return out
        out.append(y)
        n += 1


def _next_at_least(beta: Ordinal, a: Ordinal) -> Ordinal:
    if not _is_limit(beta):
        return _pred(beta)
    if a.is_zero:
        return a
    n = 0
    while fs(beta, n) < a:
        n += 1
    return fs(beta, n)


def _kappa_divides(kappa: Ordinal, n: int) -> bool:
    if kappa.is_finite:
        return n % int(kappa) == 0
    return n == 0


def naive_lambda(alpha: Ordinal, beta: Ordinal, kappa: Ordinal) -> Ordinal:
    elems = canonical_elements_upto(beta, alpha)
    best = Ordinal(())
    for pos, xi in enumerate(elems):
        if _kappa_divides(kappa, pos):
            best = xi
    return best


def naive_rho(alpha: Ordinal, beta: Ordinal, kappa: Ordinal) -> Ordinal:
    """Walk recursion on the canonical sequence, without a cache."""
    if alpha == beta:
        return Ordinal(())
    lam = naive_lambda(alpha, beta, kappa)
    fam = [xi for xi in canonical_elements_upto(beta, alpha) if lam <= xi < alpha]
    vals = [parse_ordinal(str(len(fam))), naive_rho(alpha, _next_at_least(beta, alpha), kappa)]
    vals += [naive_rho(xi, alpha, kappa) for xi in fam]
    return max(vals)


# -- threads ----------------------------------------------------------------------

def _restrict(club, a):
    return club.restrict(a)


def _coherent(D, table: dict, top: Ordinal) -> bool:
    if not D.is_club_in(top):
        return False
    for g in list(D.limit_points()) + [top]:
        if g > top:
            return False
        if D.restrict(g) not in set(table.get(g, ())):
            return False
    return True


def naive_thread_exists(table: dict, top: Ordinal) -> bool:
    """A thread satisfies the condition at the top itself, so it is one of the top clubs."""
    return any(_coherent(C, table, top) for C in table.get(top, ()))


def subset_thread_exists(table: dict, top: Ordinal, atoms: Iterable, limit: int = 16) -> bool | None:
    """Try the closure of every subset of ``atoms``; ``None`` when there are too many atoms."""
    from .ordsets import OrdinalSet, Tail

    atoms = list(atoms)
    if len(atoms) > limit:
        return None
    for r in range(1, len(atoms) + 1):
        for sub in combinations(atoms, r):
            pieces = list(sub) + [p.limit for p in sub if isinstance(p, Tail) and p.limit < top]
            D = OrdinalSet(pieces)
            if _coherent(D, table, top):
                return True
    return False
