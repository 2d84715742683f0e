"""Acceptance suites A1-A8.

Each suite returns a :class:`SuiteResult`; ``render`` gives the one-line
summary used by ``suite run``.  Randomised suites draw from
``random.Random(seed)`` only, so a fixed seed fixes the output.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations, product
from typing import Callable

from .csequence import (
    CollectionSequence,
    find_thread,
    is_thread,
    thread_atoms,
)
from .derived import FinitePoset, SystemName, branch_transfer_check
from .oracles import naive_rho, naive_thread_exists, subset_thread_exists
from .ordinal import Ordinal, finite, ordinal_grid, parse_ordinal
from .ordsets import OrdinalSet, Tail
from .systems import (
    System,
    from_subadditive,
    is_branch,
    iter_branches,
    ramsey_branch,
    reduce_to_single_relation,
    validate_system,
)
from .walks import (
    WalkContext,
    check_subadditivity,
    render_subadditivity,
    rho_kappa,
)

__all__ = ["SuiteConfig", "SuiteResult", "SUITES", "run_suite", "golden_a4", "a4_points"]


@dataclass
class SuiteConfig:
    seed: int = 0
    cap: int | None = None
    a5_instances: int = 200
    a6_instances: int = 10_000
    a7_samples_per_poset: int = 40_000
    a8_max_kappa: int = 2


@dataclass
class SuiteResult:
    name: str
    passed: int
    total: int
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def render(self) -> str:
        return f"{self.name} {'pass' if self.ok else 'fail'} {self.passed}/{self.total}"


W = parse_ordinal("w")


# -- A1 -----------------------------------------------------------------------------

def suite_a1(cfg: SuiteConfig) -> SuiteResult:
    grid = ordinal_grid({2: 2, 1: 5, 0: 5})
    ctx = WalkContext.canonical(parse_ordinal("w^3"), W)
    ok = total = 0
    notes = []
    for j, b in enumerate(grid):
        for a in grid[:j]:
            total += 1
            fast, slow = rho_kappa(ctx, a, b), naive_rho(a, b, W)
            if fast == slow:
                ok += 1
            elif len(notes) < 5:
                notes.append(f"rho {a} {b}: {fast} != {slow}")
    return SuiteResult("A1", ok, total, notes)


# -- A2 -----------------------------------------------------------------------------

def suite_a2(cfg: SuiteConfig) -> SuiteResult:
    pts = [finite(k) for k in range(5)]
    pairs = list(combinations(range(5), 2))
    triples = list(combinations(range(5), 3))
    ok = 0
    total = 0
    notes = []
    for vals in product(range(3), repeat=len(pairs)):
        total += 1
        dv = dict(zip(pairs, vals))
        S = from_subadditive(_IntD(tuple(pts), dv), 3)
        sub = all(dv[(a, c)] <= max(dv[(a, b)], dv[(b, c)]) and dv[(a, b)] <= max(dv[(a, c)], dv[(b, c)])
                  for a, b, c in triples)
        good = True
        if sub and not validate_system(S).ok:
            good = False
        if good:
            for b in iter_branches(S, "R"):
                idx = {x[1] for x in b}
                if len(idx) != 1:
                    good = False
                    break
                beta = idx.pop()
                levels = sorted(int(x[0]) for x in b)
                if any(dv[(p, q)] > beta for p, q in combinations(levels, 2)):
                    good = False
                    break
        if good:
            ok += 1
        elif len(notes) < 5:
            notes.append(f"d={vals}")
    return SuiteResult("A2", ok, total, notes)


class _IntD:
    """Light stand-in for a d-function over finite points, indexed by ints."""

    def __init__(self, domain, dv):
        self.domain = domain
        self._dv = dv

    def __call__(self, a, b):
        return self._dv[(int(a), int(b))]


# -- A3 -----------------------------------------------------------------------------

def suite_a3(cfg: SuiteConfig) -> SuiteResult:
    ctx = WalkContext.canonical(parse_ordinal("w^2"), W)
    rng = random.Random(cfg.seed)
    ok = total = 0
    notes = []
    for n in range(21):
        total += 1
        a = finite(n)
        v, o = rho_kappa(ctx, a, W), naive_rho(a, W, W)
        if v == a and o == a:
            ok += 1
        else:
            notes.append(f"rho({n}, w) = {v}, oracle {o}")
    for _ in range(200):
        total += 1
        k, c = rng.randrange(0, 40), rng.randrange(0, 40)
        a = (parse_ordinal(f"w*{k}") if k else Ordinal(())) + c
        b = a + 1
        v, o = rho_kappa(ctx, a, b), naive_rho(a, b, W)
        if v.is_zero and o.is_zero:
            ok += 1
        else:
            notes.append(f"rho({a}, {b}) = {v}, oracle {o}")
    return SuiteResult("A3", ok, total, notes[:5])


# -- A4 -----------------------------------------------------------------------------

def a4_points() -> list[Ordinal]:
    return ordinal_grid({1: 19, 0: 5})


def golden_a4() -> str:
    return resources.files("narrowsys").joinpath("golden/a4_subadditivity.txt").read_text()


def suite_a4(cfg: SuiteConfig) -> SuiteResult:
    pts = a4_points()
    ctx = WalkContext.canonical(parse_ordinal("w*20"), W)
    text = render_subadditivity(len(pts), check_subadditivity(ctx, pts))
    n = len(pts) * (len(pts) - 1) * (len(pts) - 2) // 6
    same = text == golden_a4()
    return SuiteResult("A4", n if same else 0, n, [] if same else ["differs from golden file"])


# -- A5 -----------------------------------------------------------------------------

def _w(k: int) -> Ordinal:
    return parse_ordinal(f"w*{k}")


def random_club(rng: random.Random, k: int, inner: list[int] | None = None) -> OrdinalSet:
    """A club in ``w*k``; ``inner`` lists the ``j < k`` whose ``w*j`` become limit points."""
    if inner is None:
        inner = sorted(j for j in range(1, k) if rng.random() < 0.3)
    pieces: list = []
    if rng.random() < 0.5:
        pieces.append(finite(0))
    for j in inner + [k]:
        pieces.append(Tail(_w(j), rng.randrange(0, 3)))
        if j < k:
            pieces.append(_w(j))
            if rng.random() < 0.3:
                pieces.append(parse_ordinal(f"w*{j}+{rng.randrange(1, 3)}"))
    return OrdinalSet(pieces)


def a5_instance(rng: random.Random, planted: bool) -> tuple[CollectionSequence, Ordinal, OrdinalSet | None]:
    h = rng.randrange(2, 13)
    top = _w(h)
    table: dict = {}
    D = None
    if planted:
        D = random_club(rng, h)
        for g in list(D.limit_points()):
            table.setdefault(g, set()).add(D.restrict(g))
    else:
        # top clubs always carry inner limit points so the answer is not automatic
        for _ in range(rng.randrange(1, 3)):
            inner = sorted(j for j in range(1, h) if rng.random() < 0.4) or [rng.randrange(1, h)]
            C = random_club(rng, h, inner)
            table.setdefault(top, set()).add(C)
            if rng.random() < 0.6:
                # copy some restrictions so that coherence sometimes holds
                for g in C.limit_points():
                    if g < top and rng.random() < 0.7:
                        table.setdefault(g, set()).add(C.restrict(g))
    for j in range(1, h + 1):
        lv = _w(j)
        want = rng.randrange(1, 3)
        clubs = table.setdefault(lv, set())
        while len(clubs) < want:
            clubs.add(random_club(rng, j))
    seq = CollectionSequence(top, {a: tuple(sorted(cs, key=str)) for a, cs in table.items()},
                             lambda_bound=3, variant="bracket")
    return seq, top, D


def suite_a5(cfg: SuiteConfig) -> SuiteResult:
    rng = random.Random(cfg.seed)
    ok = 0
    notes = []
    for k in range(cfg.a5_instances):
        planted = k % 2 == 0
        seq, top, D = a5_instance(rng, planted)
        res = find_thread(seq, "full", top=top, cap=cfg.cap)
        table = {a: seq.clubs(a) for a in seq.levels()}
        truth = naive_thread_exists(table, top)
        brute = subset_thread_exists(table, top, thread_atoms(seq, top), limit=12)
        good = res.status != "cap-exceeded" and (res.status == "found") == truth
        if brute is not None and brute != truth:
            good = False
        if res.found and not is_thread(seq, res.club, top):
            good = False
        if planted and not (res.found and is_thread(seq, D, top)):
            good = False
        if good:
            ok += 1
        elif len(notes) < 5:
            notes.append(f"instance {k}: {res.status} vs oracle {truth}/{brute}")
    return SuiteResult("A5", ok, cfg.a5_instances, notes)


# -- A6 -----------------------------------------------------------------------------

def random_system(rng: random.Random, n_levels: int = 3, kappa: int = 2, n_rel: int = 2, p: float = 0.3) -> System:
    levels = tuple(finite(k) for k in range(n_levels))
    nodes = [(a, b) for a in levels for b in range(kappa)]
    rels = {}
    for r in range(n_rel):
        edges = {(u, v) for u in nodes for v in nodes if u[0] < v[0] and rng.random() < p}
        changed = True
        while changed:
            extra = {(u, w) for u, v in edges for v2, w in edges if v == v2} - edges
            changed = bool(extra)
            edges |= extra
        rels[f"R{r}"] = frozenset(edges)
    return System.fast(levels, {a: kappa for a in levels}, rels)


def reduction_matches(S: System) -> bool:
    S2, corr = reduce_to_single_relation(S)
    lifted = set()
    for b in iter_branches(S2, "R"):
        rels = {corr[x][0] for x in b}
        if len(rels) != 1:
            return False
        name = rels.pop()
        down = frozenset(corr[x][1] for x in b)
        if len(down) != len(b) or not is_branch(S, name, down):
            return False
        if sorted(x[0] for x in b) != sorted(x[0] for x in down):
            return False
        lifted.add((name, down))
    direct = {(name, b) for name in S.relations for b in iter_branches(S, name)}
    return lifted == direct


def suite_a6(cfg: SuiteConfig) -> SuiteResult:
    rng = random.Random(cfg.seed)
    ok = sum(reduction_matches(random_system(rng)) for _ in range(cfg.a6_instances))
    return SuiteResult("A6", ok, cfg.a6_instances)


# -- A7 -----------------------------------------------------------------------------

def a7_posets() -> list[tuple[str, FinitePoset]]:
    return [("trivial", FinitePoset.chain(1)), ("chain2", FinitePoset.chain(2)),
            ("chain3", FinitePoset.chain(3)), ("vee", FinitePoset.vee())]


def a7_slots() -> tuple[tuple, dict, list]:
    levels = tuple(finite(k) for k in range(3))
    widths = {a: 2 for a in levels}
    slots = [((a, b), (c, e)) for a in levels for c in levels if a < c for b in range(2) for e in range(2)]
    return levels, widths, slots


def a7_names(cfg: SuiteConfig):
    """Every name over the trivial poset, then seeded samples over the larger ones."""
    levels, widths, slots = a7_slots()
    rng = random.Random(cfg.seed)
    for label, P in a7_posets():
        downs = P.downsets()
        if len(downs) ** len(slots) <= cfg.a7_samples_per_poset:
            choices = product(downs, repeat=len(slots))
        else:
            choices = (tuple(rng.choice(downs) for _ in slots) for _ in range(cfg.a7_samples_per_poset))
        for pick in choices:
            dec = {(0, u, v): s for (u, v), s in zip(slots, pick) if s}
            yield label, P, SystemName(levels, widths, 1, dec)


def suite_a7(cfg: SuiteConfig) -> SuiteResult:
    ok = total = 0
    notes = []
    for label, P, N in a7_names(cfg):
        total += 1
        rep = branch_transfer_check(N, P)
        if rep.ok:
            ok += 1
        elif len(notes) < 5:
            notes.append(f"{label}: {rep.render().splitlines()[0]}")
    return SuiteResult("A7", ok, total, notes)


# -- A8 -----------------------------------------------------------------------------

def iter_forests(n_levels: int, kappa: int):
    """Ancestor relations of level-increasing forests on ``n_levels x kappa`` meeting clause 4.

    Yields ``(parents, ancestor_masks)`` with nodes numbered level by level.
    """
    n = n_levels * kappa
    level_mask = [((1 << kappa) - 1) << (kappa * l) for l in range(n_levels)]
    anc = [0] * n
    parent = [-1] * n

    def rec(level: int):
        if level == n_levels:
            yield tuple(parent), tuple(anc)
            return
        base = level * kappa
        options = [-1] + list(range(base))
        for pick in product(options, repeat=kappa):
            cover = 0
            for k, p in enumerate(pick):
                parent[base + k] = p
                anc[base + k] = 0 if p < 0 else anc[p] | (1 << p)
                cover |= anc[base + k]
            if all(cover & level_mask[j] for j in range(level)):
                yield from rec(level + 1)
        for k in range(kappa):
            parent[base + k], anc[base + k] = -1, 0

    yield from rec(0)


def suite_a8(cfg: SuiteConfig) -> SuiteResult:
    n_levels = 6
    levels = tuple(finite(k) for k in range(n_levels))
    ok = total = 0
    notes = []
    for kappa in range(1, cfg.a8_max_kappa + 1):
        nodes = [(levels[i // kappa], i % kappa) for i in range(n_levels * kappa)]
        widths = {a: kappa for a in levels}
        for _, anc in iter_forests(n_levels, kappa):
            total += 1
            edges = frozenset((nodes[a], nodes[v]) for v, m in enumerate(anc) for a in _bit_list(m))
            S = System.fast(levels, widths, {"R": edges})
            res = ramsey_branch(S)
            b = res.branch
            good = b is not None and is_branch(S, "R", b.nodes)
            if good and len(set(res.coloring.values())) <= 2 and len(b) < 2:
                good = False
            if good:
                ok += 1
            elif len(notes) < 5:
                notes.append(f"kappa={kappa} anc={anc}")
    return SuiteResult("A8", ok, total, notes)


_BITS: dict = {}


def _bit_list(m: int) -> tuple:
    hit = _BITS.get(m)
    if hit is None:
        hit = _BITS[m] = tuple(i for i in range(m.bit_length()) if m >> i & 1)
    return hit


SUITES: dict[str, Callable[[SuiteConfig], SuiteResult]] = {
    "A1": suite_a1, "A2": suite_a2, "A3": suite_a3, "A4": suite_a4,
    "A5": suite_a5, "A6": suite_a6, "A7": suite_a7, "A8": suite_a8,
}


def run_suite(name: str, cfg: SuiteConfig | None = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    t = time.perf_counter()
    res = SUITES[name](cfg or SuiteConfig())
    res.seconds = time.perf_counter() - t
    return res
