"""Sets of ordinals that can stand in for clubs.

A set is a finite union of *points* and *tails*; a tail ``Tail(g, s)`` is
``{g[n] : n >= s}`` for the canonical fundamental sequence of the limit ``g``.
Finite explicit sets and rule-based omega-sequences are both special cases.

The constructor normalises: overlapping pieces are split into points, and a
point directly preceding its tail's first entry is absorbed into that tail.
After normalisation two sets are equal exactly when their piece tuples are.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .ordinal import (
    OMEGA,
    ZERO,
    Kind,
    Ordinal,
    add,
    classify,
    finite,
    fundamental_index,
    fundamental_sequence,
)

__all__ = ["Tail", "OrdinalSet", "InfiniteSetError", "order_type"]


class InfiniteSetError(ValueError):
    """An operation needed to list infinitely many elements."""


@dataclass(frozen=True)
class Tail:
    limit: Ordinal
    start: int = 0

    def __post_init__(self):
        if classify(self.limit) is not Kind.LIMIT:
            raise ValueError(f"tail limit {self.limit} is not a limit ordinal")
        if self.start < 0:
            raise ValueError("tail start must be >= 0")

    @property
    def first(self) -> Ordinal:
        return fundamental_sequence(self.limit, self.start)

    def entry(self, n: int) -> Ordinal:
        return fundamental_sequence(self.limit, n)

    def index_of(self, x: Ordinal) -> int | None:
        if x >= self.limit:
            return None
        m, hit = fundamental_index(self.limit, x)
        return m if hit and m >= self.start else None

    def count_below(self, x: Ordinal) -> int | None:
        """Number of entries below ``x``; ``None`` when that is infinite."""
        if x >= self.limit:
            return None
        m, _ = fundamental_index(self.limit, x)
        return max(0, m - self.start)

    def __str__(self) -> str:
        return f"{self.limit}[{self.start}..]"


Piece = Union[Ordinal, Tail]


def _low(p: Piece) -> Ordinal:
    return p.first if isinstance(p, Tail) else p


class OrdinalSet:
    __slots__ = ("pieces", "_hash")

    def __init__(self, pieces: Iterable[Union[Piece, int]] = ()):
        self.pieces = _normalise(pieces)
        self._hash = hash(self.pieces)

    @classmethod
    def explicit(cls, elems: Iterable) -> "OrdinalSet":
        return cls(Ordinal.coerce(e) for e in elems)

    @classmethod
    def omega_sequence(cls, limit, start: int = 0) -> "OrdinalSet":
        return cls([Tail(Ordinal.coerce(limit), start)])

    # -- basic protocol --------------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, OrdinalSet) and self.pieces == other.pieces

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.pieces)

    def __repr__(self) -> str:
        return f"OrdinalSet({self})"

    def __str__(self) -> str:
        return "{ " + ", ".join(str(p) for p in self.pieces) + " }" if self.pieces else "{ }"

    def __contains__(self, x) -> bool:
        x = Ordinal.coerce(x)
        for p in self.pieces:
            if isinstance(p, Tail):
                if p.first <= x < p.limit:
                    return p.index_of(x) is not None
            elif p == x:
                return True
            elif p > x:
                return False
        return False

    @property
    def is_finite(self) -> bool:
        return not any(isinstance(p, Tail) for p in self.pieces)

    def __iter__(self) -> Iterator[Ordinal]:
        if not self.is_finite:
            raise InfiniteSetError(f"{self} is infinite")
        return iter(self.pieces)

    def __len__(self) -> int:
        if not self.is_finite:
            raise InfiniteSetError(f"{self} is infinite")
        return len(self.pieces)

    # -- order structure -----------------------------------------------------
    @property
    def sup(self) -> Ordinal:
        """Least ordinal above every element (``max + 1`` for a set with a maximum)."""
        if not self.pieces:
            return ZERO
        last = self.pieces[-1]
        return last.limit if isinstance(last, Tail) else add(last, 1)

    def max(self) -> Ordinal | None:
        if self.pieces and not isinstance(self.pieces[-1], Tail):
            return self.pieces[-1]
        return None

    def min(self) -> Ordinal | None:
        return _low(self.pieces[0]) if self.pieces else None

    def limit_points(self) -> tuple[Ordinal, ...]:
        """All limit points of the set (the suprema of its tails), ascending."""
        return tuple(p.limit for p in self.pieces if isinstance(p, Tail))

    def order_type(self, below=None) -> Ordinal:
        """Order type of the set, or of its part below ``below``."""
        bound = None if below is None else Ordinal.coerce(below)
        total = ZERO
        for p in self.pieces:
            if bound is not None and _low(p) >= bound:
                break
            if isinstance(p, Tail):
                n = None if bound is None else p.count_below(bound)
                total = add(total, OMEGA if n is None else finite(n))
            else:
                total = add(total, finite(1))
        return total

    def order_type_between(self, lo, hi) -> Ordinal:
        """Order type of the elements in ``[lo, hi)``."""
        lo, hi = Ordinal.coerce(lo), Ordinal.coerce(hi)
        total = ZERO
        for p in self.pieces:
            if _low(p) >= hi:
                break
            if not isinstance(p, Tail):
                if p >= lo:
                    total = add(total, finite(1))
                continue
            if p.limit <= lo:
                continue
            start = p.start
            if p.first < lo:
                start = max(start, fundamental_index(p.limit, lo)[0])
            if p.limit <= hi:
                total = add(total, OMEGA)
            else:
                total = add(total, finite(max(0, p.start + p.count_below(hi) - start)))
        return total

    def restrict(self, below) -> "OrdinalSet":
        """``self & below``: the elements strictly below ``below``."""
        bound = Ordinal.coerce(below)
        out: list[Piece] = []
        for p in self.pieces:
            if _low(p) >= bound:
                break
            if isinstance(p, Tail) and p.limit > bound:
                n = p.count_below(bound)
                out.extend(p.entry(k) for k in range(p.start, p.start + n))
            else:
                out.append(p)
        return OrdinalSet(out)

    def min_at_least(self, x) -> Ordinal | None:
        """``min(self \\ x)``."""
        x = Ordinal.coerce(x)
        for p in self.pieces:
            if isinstance(p, Tail):
                if p.limit <= x:
                    continue
                if p.first >= x:
                    return p.first
                m, _ = fundamental_index(p.limit, x)
                return p.entry(max(m, p.start))
            if p >= x:
                return p
        return None

    def elements_between(self, lo, hi) -> list[Ordinal]:
        """Elements in ``[lo, hi)``, ascending; raises if there are infinitely many."""
        lo, hi = Ordinal.coerce(lo), Ordinal.coerce(hi)
        out = []
        for p in self.pieces:
            if _low(p) >= hi:
                break
            if isinstance(p, Tail):
                if p.limit <= lo:
                    continue
                if p.limit <= hi:
                    raise InfiniteSetError(f"{p} lies inside [{lo}, {hi})")
                start = p.start
                if p.first < lo:
                    start = max(start, fundamental_index(p.limit, lo)[0])
                stop = p.start + p.count_below(hi)
                out.extend(p.entry(k) for k in range(start, stop))
            elif p >= lo:
                out.append(p)
        return out

    def issubset(self, other: "OrdinalSet") -> bool:
        tails = {p.limit: p.start for p in other.pieces if isinstance(p, Tail)}
        for p in self.pieces:
            if isinstance(p, Tail):
                if tails.get(p.limit, p.start + 1) > p.start:
                    return False
            elif p not in other:
                return False
        return True

    def union(self, *others: "OrdinalSet") -> "OrdinalSet":
        pieces = list(self.pieces)
        for o in others:
            pieces.extend(o.pieces)
        return OrdinalSet(pieces)

    def with_points(self, *points) -> "OrdinalSet":
        return OrdinalSet(list(self.pieces) + [Ordinal.coerce(p) for p in points])

    # -- club predicates -----------------------------------------------------
    def club_problems(self, alpha) -> list[str]:
        """Reasons the set fails to be club in ``alpha``; empty when it is a club."""
        alpha = Ordinal.coerce(alpha)
        problems = []
        if classify(alpha) is Kind.SUCCESSOR:
            # club in a successor alpha+1 means: contains the top point alpha
            top = self.max()
            if top is None or add(top, 1) != alpha:
                problems.append(f"does not contain the maximum of {alpha}")
        elif classify(alpha) is Kind.ZERO:
            if self.pieces:
                problems.append("nonempty subset of 0")
            return problems
        else:
            if self.sup != alpha or not self.pieces or not isinstance(self.pieces[-1], Tail):
                problems.append(f"not unbounded in {alpha} (sup is {self.sup})")
        for g in self.limit_points():
            if g < alpha and g not in self:
                problems.append(f"not closed: limit point {g} missing")
        if self.pieces and self.sup > alpha:
            problems.append(f"has elements at or above {alpha}")
        return problems

    def is_club_in(self, alpha) -> bool:
        return not self.club_problems(alpha)

    def is_closed_bounded(self) -> bool:
        return self.max() is not None and all(g in self for g in self.limit_points())


def order_type(s: OrdinalSet, below) -> Ordinal:
    """Order type of ``{x in s : x < below}``."""
    return s.order_type(below)


def _normalise(raw: Iterable) -> tuple[Piece, ...]:
    points: set[Ordinal] = set()
    tails: dict[Ordinal, int] = {}
    for p in raw:
        if isinstance(p, Tail):
            tails[p.limit] = min(p.start, tails.get(p.limit, p.start))
        else:
            points.add(Ordinal.coerce(p))

    # a tail must start above every smaller tail's limit
    limits = sorted(tails)
    for small, big in zip(limits, limits[1:]):
        start = tails[big]
        if fundamental_sequence(big, start) < small:
            m, _ = fundamental_index(big, small)
            points.update(fundamental_sequence(big, k) for k in range(start, m))
            tails[big] = m

    # points strictly inside a tail's range either belong to it or split it
    changed = True
    while changed:
        changed = False
        for x in sorted(points):
            for g, start in tails.items():
                first = fundamental_sequence(g, start)
                if not (first <= x < g):
                    continue
                m, hit = fundamental_index(g, x)
                if hit:
                    points.discard(x)
                    points.update(fundamental_sequence(g, k) for k in range(start, m))
                    tails[g] = m
                else:
                    points.update(fundamental_sequence(g, k) for k in range(start, m))
                    tails[g] = m
                changed = True
                break
            if changed:
                break

    pieces: list[Piece] = list(points) + [Tail(g, s) for g, s in tails.items()]
    pieces.sort(key=_low)

    # absorb a point into the tail right after it when it is the previous entry
    out: list[Piece] = []
    for p in pieces:
        if isinstance(p, Tail):
            start = p.start
            while (start > 0 and out and not isinstance(out[-1], Tail)
                   and out[-1] == fundamental_sequence(p.limit, start - 1)):
                out.pop()
                start -= 1
            p = Tail(p.limit, start) if start != p.start else p
        out.append(p)
    return tuple(out)
