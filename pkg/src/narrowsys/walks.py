"""Walk characteristics Lambda_kappa and rho_kappa along a C-sequence.

Conventions on finite truncations: ``C_(a+1) = {a}``, ``max {} = 0`` inside
Lambda, and ``rho(a, a) = 0``.  The supremum in the recursion is over a finite
family, so it is a max.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from .csequence import CSequence, build_canonical
from .ordinal import ZERO, Ordinal, divides, finite
from .ordsets import InfiniteSetError, OrdinalSet, Tail

__all__ = [
    "WalkError",
    "WalkContext",
    "SubadditiveFunction",
    "SubadditivityViolation",
    "lambda_kappa",
    "rho_kappa",
    "check_subadditivity",
    "check_unbounded",
    "render_subadditivity",
    "rho_table",
]


class WalkError(ValueError):
    pass


@dataclass
class WalkContext:
    C: CSequence
    kappa: Ordinal
    memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.kappa = Ordinal.coerce(self.kappa)
        if self.kappa.is_zero:
            raise WalkError("kappa must be nonzero")

    @classmethod
    def canonical(cls, bound, kappa) -> "WalkContext":
        return cls(build_canonical(bound), kappa)

    def fresh(self) -> "WalkContext":
        return WalkContext(self.C, self.kappa)


def _divisible_in_tail(kappa: Ordinal, before: Ordinal) -> list[int]:
    """Offsets ``m`` (descending) with ``kappa | before + m``; only a finite window can work."""
    if kappa.is_finite:
        raise WalkError("finite kappa: no largest qualifying entry inside a tail")
    f = kappa.finite_part
    return [m for m in range(f, -1, -1) if divides(kappa, before + finite(m))]


def lambda_kappa(ctx: WalkContext, alpha, beta) -> Ordinal:
    alpha, beta = Ordinal.coerce(alpha), Ordinal.coerce(beta)
    if alpha >= beta:
        raise WalkError(f"lambda needs alpha < beta, got {alpha}, {beta}")
    club = ctx.C.club(beta)
    part = club.restrict(alpha + 1)
    for piece in reversed(part.pieces):
        if isinstance(piece, Tail):
            before = club.order_type(piece.first)
            for m in _divisible_in_tail(ctx.kappa, before):
                return piece.entry(piece.start + m)
        elif divides(ctx.kappa, club.order_type(piece)):
            return piece
    return ZERO


def rho_kappa(ctx: WalkContext, alpha, beta) -> Ordinal:
    alpha, beta = Ordinal.coerce(alpha), Ordinal.coerce(beta)
    if alpha > beta:
        raise WalkError(f"rho needs alpha <= beta, got {alpha}, {beta}")
    limit = sys.getrecursionlimit()
    if limit < 20000:
        sys.setrecursionlimit(20000)
    return _rho(ctx, alpha, beta)


def _rho(ctx: WalkContext, alpha: Ordinal, beta: Ordinal) -> Ordinal:
    if alpha == beta:
        return ZERO
    key = (alpha, beta)
    hit = ctx.memo.get(key)
    if hit is not None:
        return hit
    club = ctx.C.club(beta)
    lam = lambda_kappa(ctx, alpha, beta)
    best = club.order_type_between(lam, alpha)
    nxt = club.min_at_least(alpha)
    if nxt is None:
        raise WalkError(f"C_{beta} is bounded below {alpha}")
    best = max(best, _rho(ctx, alpha, nxt))
    try:
        xs = club.elements_between(lam, alpha)
    except InfiniteSetError as exc:
        raise WalkError(f"infinite family in rho({alpha}, {beta})") from exc
    for xi in xs:
        best = max(best, _rho(ctx, xi, alpha))
    ctx.memo[key] = best
    return best


# -- subadditivity ---------------------------------------------------------------

@dataclass(frozen=True)
class SubadditivityViolation:
    prop: int                       # 1 or 2
    triple: tuple[Ordinal, Ordinal, Ordinal]
    values: tuple[Ordinal, Ordinal, Ordinal]   # rho(a,b), rho(a,c), rho(b,c)

    def render(self) -> str:
        a, b, c = self.triple
        ab, ac, bc = self.values
        return f"violation prop{self.prop} {a} {b} {c} : {ab} {ac} {bc}"


def check_subadditivity(ctx: WalkContext, enumeration: Iterable) -> list[SubadditivityViolation]:
    """All triples ``a < b < c`` from ``enumeration`` breaking either inequality.

    (1) ``rho(a, c) <= max(rho(a, b), rho(b, c))``
    (2) ``rho(a, b) <= max(rho(a, c), rho(b, c))``
    """
    pts = sorted({Ordinal.coerce(x) for x in enumeration})
    out = []
    for a, b, c in combinations(pts, 3):
        ab, ac, bc = rho_kappa(ctx, a, b), rho_kappa(ctx, a, c), rho_kappa(ctx, b, c)
        vals = (ab, ac, bc)
        if ac > max(ab, bc):
            out.append(SubadditivityViolation(1, (a, b, c), vals))
        if ab > max(ac, bc):
            out.append(SubadditivityViolation(2, (a, b, c), vals))
    return out


def render_subadditivity(points: int, violations: list[SubadditivityViolation]) -> str:
    """Golden-file text for a subadditivity scan."""
    n = points * (points - 1) * (points - 2) // 6
    lines = [f"subadditivity triples={n} violations={len(violations)}"]
    lines += [v.render() for v in violations]
    return "\n".join(lines) + "\n"


@dataclass
class SubadditiveFunction:
    domain: tuple[Ordinal, ...]
    range_kappa: Ordinal
    values: dict = field(default_factory=dict)   # (a, b) with a < b -> value

    def __post_init__(self):
        self.domain = tuple(sorted({Ordinal.coerce(x) for x in self.domain}))
        self.range_kappa = Ordinal.coerce(self.range_kappa)
        vals = {}
        for (a, b), v in self.values.items():
            a, b = Ordinal.coerce(a), Ordinal.coerce(b)
            if a == b:
                raise ValueError(f"d is defined on pairs of distinct ordinals, got ({a},{b})")
            vals[(min(a, b), max(a, b))] = Ordinal.coerce(v)
        self.values = vals

    def __call__(self, a, b) -> Ordinal:
        a, b = Ordinal.coerce(a), Ordinal.coerce(b)
        return self.values[(min(a, b), max(a, b))]

    def problems(self) -> list[str]:
        out = []
        for a, b in combinations(self.domain, 2):
            v = self.values.get((a, b))
            if v is None:
                out.append(f"d undefined on ({a},{b})")
            elif v >= self.range_kappa:
                out.append(f"d({a},{b}) = {v} not below {self.range_kappa}")
        return out

    def triangle_failures(self) -> list[tuple[int, tuple]]:
        """Triples breaking the two inequalities, with the property number."""
        out = []
        for a, b, c in combinations(self.domain, 3):
            ab, ac, bc = self(a, b), self(a, c), self(b, c)
            if ac > max(ab, bc):
                out.append((1, (a, b, c)))
            if ab > max(ac, bc):
                out.append((2, (a, b, c)))
        return out

    @classmethod
    def from_walk(cls, ctx: WalkContext, domain: Iterable) -> "SubadditiveFunction":
        dom = sorted({Ordinal.coerce(x) for x in domain})
        vals = {(a, b): rho_kappa(ctx, a, b) for a, b in combinations(dom, 2)}
        return cls(tuple(dom), ctx.kappa, vals)


@dataclass(frozen=True)
class UnboundedReport:
    sup_observed: Ordinal
    attained_pairs: tuple

    def render(self) -> str:
        pairs = " ".join(f"({a},{b})" for a, b in self.attained_pairs)
        return f"sup {self.sup_observed}\nattained {pairs}\n"


def check_unbounded(d: SubadditiveFunction, I: Iterable | None = None) -> UnboundedReport:
    pts = sorted({Ordinal.coerce(x) for x in (d.domain if I is None else I)})
    if len(pts) < 2:
        raise ValueError("need at least two points")
    missing = [x for x in pts if x not in d.domain]
    if missing:
        raise ValueError(f"{missing[0]} is outside the domain of d")
    vals = {(a, b): d(a, b) for a, b in combinations(pts, 2)}
    top = max(vals.values())
    return UnboundedReport(top, tuple(p for p, v in vals.items() if v == top))


def rho_table(ctx: WalkContext, points: Iterable) -> str:
    """``rho a b = v`` lines for all ``a < b`` among ``points``, sorted by ``(b, a)``."""
    pts = sorted({Ordinal.coerce(x) for x in points})
    lines = [f"rho {a} {b} = {rho_kappa(ctx, a, b)}"
             for j, b in enumerate(pts) for a in pts[:j]]
    return "".join(line + "\n" for line in lines)
