"""Systems of levels with tree-like relations, their branches, and constructions.

A node is a pair ``(level, index)`` with ``level`` an :class:`Ordinal` and
``index < width_at[level]``.  Relations are named sets of strict edges.  Most
checks run on a bitmask index built once per system.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .ordinal import Ordinal
from .report import ValidationReport, Violation

__all__ = [
    "Node",
    "System",
    "Branch",
    "BranchSearch",
    "FullSetResult",
    "RamseyResult",
    "TreeSystem",
    "SystemError_",
    "Clause4Error",
    "validate_system",
    "system_from_tree",
    "from_subadditive",
    "reduce_to_single_relation",
    "iter_branches",
    "is_branch",
    "find_cofinal_branch",
    "is_full_branch_set",
    "ramsey_branch",
]

Node = tuple  # (Ordinal, int)


class SystemError_(ValueError):
    """Input that cannot be turned into a system."""


class Clause4Error(SystemError_):
    pass


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _node(x) -> Node:
    a, b = x
    return (Ordinal.coerce(a), int(b))


def node_str(n: Node) -> str:
    return f"({n[0]},{n[1]})"


class _Index:
    __slots__ = ("nodes", "pos", "lvl", "level_mask", "succ", "pred", "bad")

    def __init__(self, S: "System"):
        lv_pos = {a: i for i, a in enumerate(S.levels)}
        self.nodes = [(a, b) for a in S.levels for b in range(S.width_at[a])]
        self.pos = {n: i for i, n in enumerate(self.nodes)}
        self.lvl = [lv_pos[a] for a, _ in self.nodes]
        self.level_mask = [0] * len(S.levels)
        for i, li in enumerate(self.lvl):
            self.level_mask[li] |= 1 << i
        self.succ, self.pred, self.bad = {}, {}, []
        n = len(self.nodes)
        for name, edges in S.relations.items():
            succ, pred = [0] * n, [0] * n
            for u, v in edges:
                iu, iv = self.pos.get(u), self.pos.get(v)
                if iu is None or iv is None:
                    self.bad.append((name, u, v))
                    continue
                succ[iu] |= 1 << iv
                pred[iv] |= 1 << iu
            self.succ[name], self.pred[name] = succ, pred


@dataclass
class System:
    levels: tuple
    width_at: dict
    relations: dict                       # name -> frozenset of (Node, Node)
    top: tuple = ()
    intended: tuple | None = None         # declared (width, height) aleph indices
    _idx: _Index | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        self.levels = tuple(sorted({Ordinal.coerce(a) for a in self.levels}))
        self.width_at = {Ordinal.coerce(a): int(k) for a, k in self.width_at.items()}
        missing = [a for a in self.levels if a not in self.width_at]
        if missing:
            raise SystemError_(f"no width for level {missing[0]}")
        if any(self.width_at[a] < 1 for a in self.levels):
            raise SystemError_("widths must be positive")
        self.relations = {str(k): frozenset((_node(u), _node(v)) for u, v in e)
                          for k, e in self.relations.items()}
        if not self.relations:
            raise SystemError_("a system needs at least one relation")
        self.top = tuple(sorted({Ordinal.coerce(a) for a in self.top}))

    @classmethod
    def fast(cls, levels: tuple, width_at: dict, relations: dict) -> "System":
        """Construct from already-normalised data, skipping coercion."""
        obj = cls.__new__(cls)
        obj.levels, obj.width_at, obj.relations = levels, width_at, relations
        obj.top, obj.intended, obj._idx = (), None, None
        return obj

    @property
    def index(self) -> _Index:
        if self._idx is None:
            self._idx = _Index(self)
        return self._idx

    @property
    def width(self) -> int:
        return max([len(self.relations)] + [self.width_at[a] for a in self.levels])

    @property
    def height(self) -> int:
        return len(self.levels)

    def nodes(self) -> list[Node]:
        return list(self.index.nodes)

    def related(self, rel: str, u: Node, v: Node) -> bool:
        return (u, v) in self.relations[rel]

    def comparable(self, rel: str, u: Node, v: Node) -> bool:
        return u == v or (u, v) in self.relations[rel] or (v, u) in self.relations[rel]

    def marked_levels(self) -> tuple:
        return self.top or self.levels

    def edge_count(self) -> int:
        return sum(len(e) for e in self.relations.values())


@dataclass(frozen=True)
class Branch:
    nodes: frozenset
    relation: str

    def levels(self) -> tuple:
        return tuple(sorted({a for a, _ in self.nodes}))

    def sorted_nodes(self) -> list:
        return sorted(self.nodes)

    def render(self) -> str:
        return f"branch {self.relation} " + " ".join(node_str(n) for n in self.sorted_nodes())

    def __len__(self) -> int:
        return len(self.nodes)


# -- validation -----------------------------------------------------------------

def validate_system(S: System, strong: bool = False) -> ValidationReport:
    """Clause check for a system; ``strong`` also checks the per-node connection clause."""
    ix = S.index
    found: list[Violation] = []
    for name, u, v in ix.bad:
        found.append(Violation("malformed", (name, u, v), "edge endpoint is not a node"))
    nodes, lvl = ix.nodes, ix.lvl
    connected: set = set()
    for name in S.relations:
        succ, pred = ix.succ[name], ix.pred[name]
        for iu, s in enumerate(succ):
            for iv in _bits(s):
                if lvl[iu] >= lvl[iv]:
                    found.append(Violation("3.level-increasing", (name, nodes[iu], nodes[iv]),
                                           "edge does not raise the level"))
                else:
                    connected.add((lvl[iu], lvl[iv]))
                missing = succ[iv] & ~s
                for iw in _bits(missing):
                    found.append(Violation("2.transitive", (name, nodes[iu], nodes[iv], nodes[iw]),
                                           "missing composite edge"))
        for ic, p in enumerate(pred):
            for ia in _bits(p):
                bad = p & ~(1 << ia) & ~pred[ia] & ~succ[ia]
                for ib in _bits(bad):
                    if ib > ia:
                        found.append(Violation("2.tree-like", (name, nodes[ia], nodes[ib], nodes[ic]),
                                               "incomparable predecessors"))
    L = S.levels
    for i, j in combinations(range(len(L)), 2):
        if (i, j) not in connected:
            found.append(Violation("4.connect", (L[i], L[j]), "no edge between the levels"))
    if strong:
        allpred = [0] * len(nodes)
        for name in S.relations:
            for k, p in enumerate(ix.pred[name]):
                allpred[k] |= p
        for i, j in combinations(range(len(L)), 2):
            for k in _bits(ix.level_mask[j]):
                if not allpred[k] & ix.level_mask[i]:
                    found.append(Violation("4'.connect", (L[i], nodes[k]),
                                           "target node has no predecessor on the lower level"))
    facts = {"width": S.width, "height": S.height, "relations": len(S.relations),
             "edges": S.edge_count(), "narrow": _narrow(S)}
    return ValidationReport("system-strong" if strong else "system", found, facts)


def _narrow(S: System) -> str:
    if S.intended is None:
        return "undeclared"
    w, h = S.intended
    return "yes" if w + 1 < h else "no"


class TreeSystem:
    """A one-relation system from a tree, tagged with its clause-4 outcome."""

    def __init__(self, system: System, report: ValidationReport):
        self.system = system
        self.report = report

    @property
    def admits(self) -> bool:
        return not report_has(self.report, "4.connect")


def report_has(rep: ValidationReport, clause: str) -> bool:
    return bool(rep.by_clause(clause))


def system_from_tree(tree_edges: Iterable, I: Iterable, kappa: int) -> TreeSystem:
    levels = tuple(sorted({Ordinal.coerce(a) for a in I}))
    edges = frozenset((_node(u), _node(v)) for u, v in tree_edges)
    S = System(levels, {a: kappa for a in levels}, {"T": edges})
    rep = validate_system(S)
    structural = [v for v in rep.violations if v.clause != "4.connect"]
    if structural:
        v = structural[0]
        raise SystemError_(f"not a tree order: {v.render()}")
    return TreeSystem(S, rep)


def from_subadditive(d, kappa: int) -> System:
    """One relation on ``I x kappa``: ``(a0, b) < (a1, b)`` iff ``a0 < a1`` and ``b >= d(a0, a1)``."""
    levels = tuple(d.domain)
    edges = set()
    for a0, a1 in combinations(levels, 2):
        v = d(a0, a1)
        for b in range(kappa):
            if v <= b:
                edges.add(((a0, b), (a1, b)))
    return System.fast(levels, {a: kappa for a in levels}, {"R": frozenset(edges)})


def reduce_to_single_relation(S: System) -> tuple[System, dict]:
    """Merge the relations ``R_x`` into one by pairing ``(x, b) -> x * width + b`` per level.

    Returns the new system and the map from new nodes to ``(relation name, old node)``.
    """
    names = list(S.relations)
    k0 = len(names)
    corr = {}
    for a in S.levels:
        w = S.width_at[a]
        for x in range(k0):
            for b in range(w):
                corr[(a, x * w + b)] = (names[x], (a, b))
    edges = set()
    for x, name in enumerate(names):
        for (u, v) in S.relations[name]:
            edges.add(((u[0], x * S.width_at[u[0]] + u[1]), (v[0], x * S.width_at[v[0]] + v[1])))
    out = System.fast(S.levels, {a: S.width_at[a] * k0 for a in S.levels}, {"R": frozenset(edges)})
    out.top = S.top
    return out, corr


# -- branches -----------------------------------------------------------------------

def is_branch(S: System, rel: str, nodes: Iterable) -> bool:
    ns = sorted(nodes)
    if len({a for a, _ in ns}) != len(ns):
        return False
    if any(n not in S.index.pos for n in ns):
        return False
    return all(S.comparable(rel, u, v) for u, v in combinations(ns, 2))


def iter_branches(S: System, rel: str) -> Iterator[frozenset]:
    """Every nonempty branch through ``rel``, in a fixed order."""
    ix = S.index
    comp = [s | p for s, p in zip(ix.succ[rel], ix.pred[rel])]
    nodes = ix.nodes
    n = len(nodes)

    def rec(chosen: list, cand: int):
        for i in _bits(cand):
            chosen.append(i)
            yield frozenset(nodes[j] for j in chosen)
            yield from rec(chosen, cand & comp[i] & ~((1 << (i + 1)) - 1))
            chosen.pop()

    yield from rec([], (1 << n) - 1)


@dataclass
class BranchSearch:
    branch: Branch | None
    longest: dict                 # relation -> Branch (most levels met)
    required: int
    marked: tuple

    def render(self) -> str:
        lines = [f"cofinal {'found' if self.branch else 'none'} required={self.required}"]
        if self.branch:
            lines.append(self.branch.render())
        for rel in sorted(self.longest):
            b = self.longest[rel]
            lines.append(f"longest {rel} levels={len(b.levels())} " + " ".join(node_str(n) for n in b.sorted_nodes()))
        return "\n".join(lines) + "\n"


def _chains(S: System, rel: str, weight: list[int]) -> tuple[list[int], list[int], list[int], list[int]]:
    """Best weighted chain ending at / starting after each node, for a transitive relation."""
    ix = S.index
    n = len(ix.nodes)
    order = sorted(range(n), key=lambda i: (ix.lvl[i], i))
    down, dprev = [0] * n, [-1] * n
    for i in order:
        best, arg = 0, -1
        for j in _bits(ix.pred[rel][i]):
            if down[j] > best:
                best, arg = down[j], j
        down[i], dprev[i] = best + weight[i], arg
    up, unext = [0] * n, [-1] * n
    for i in reversed(order):
        best, arg = 0, -1
        for j in _bits(ix.succ[rel][i]):
            if up[j] + weight[j] > best:
                best, arg = up[j] + weight[j], j
        up[i], unext[i] = best, arg
    return down, dprev, up, unext


def _is_transitive(S: System, rel: str) -> bool:
    succ = S.index.succ[rel]
    return all(not (succ[v] & ~s) for s in succ for v in _bits(s))


def _best_branch(S: System, rel: str, weight: list[int], through: int) -> tuple[int, frozenset]:
    """Heaviest branch through ``rel`` meeting the level mask ``through`` (any level if 0)."""
    ix = S.index
    if _is_transitive(S, rel):
        down, dprev, up, unext = _chains(S, rel, weight)
        best, arg = -1, -1
        for i in range(len(ix.nodes)):
            if through and not (through >> i) & 1:
                continue
            if down[i] + up[i] > best:
                best, arg = down[i] + up[i], i
        if arg < 0:
            return -1, frozenset()
        picked, j = [], arg
        while j >= 0:
            picked.append(j)
            j = dprev[j]
        j = unext[arg]
        while j >= 0:
            picked.append(j)
            j = unext[j]
        return best, frozenset(ix.nodes[j] for j in picked)
    # same visiting order as iter_branches, on masks
    comp = [s | p for s, p in zip(ix.succ[rel], ix.pred[rel])]
    best = [-1, 0]

    def rec(chosen: int, w: int, cand: int):
        for i in _bits(cand):
            m, wi = chosen | (1 << i), w + weight[i]
            if wi > best[0] and (not through or m & through):
                best[0], best[1] = wi, m
            rec(m, wi, cand & comp[i] & ~((1 << (i + 1)) - 1))

    rec(0, 0, (1 << len(ix.nodes)) - 1)
    return best[0], frozenset(ix.nodes[i] for i in _bits(best[1]))


def find_cofinal_branch(S: System, fraction: float = 1.0) -> BranchSearch:
    """Branch meeting the highest marked level and ``ceil(fraction * |marked|)`` marked levels.

    Marked levels are the declared top markers, or every level when none are declared.
    """
    ix = S.index
    marked = S.marked_levels()
    need = max(1, math.ceil(fraction * len(marked) - 1e-9))
    mset = set(marked)
    weight = [1 if a in mset else 0 for a, _ in ix.nodes]
    top_mask = ix.level_mask[S.levels.index(marked[-1])] if marked else 0
    found, longest = None, {}
    for rel in S.relations:
        _, b = _best_branch(S, rel, [1] * len(ix.nodes), 0)
        longest[rel] = Branch(b, rel)
        w, c = _best_branch(S, rel, weight, top_mask)
        if found is None and w >= need:
            found = Branch(c, rel)
    return BranchSearch(found, longest, need, marked)


@dataclass
class FullSetResult:
    ok: bool
    witness: tuple = ()          # ("branch", gamma) or ("level", alpha)
    most_levels: int = 0

    def render(self) -> str:
        w = " ".join(str(x) for x in self.witness)
        return f"full {'yes' if self.ok else 'no'}" + (f" {w}" if w else "") + f" most-levels={self.most_levels}\n"


def is_full_branch_set(S: System, B: list) -> FullSetResult:
    for g, b in enumerate(B):
        if b.relation not in S.relations or not is_branch(S, b.relation, b.nodes):
            return FullSetResult(False, ("branch", g))
    met = set()
    for b in B:
        met.update(b.levels())
    most = max((len(b.levels()) for b in B), default=0)
    for a in S.levels:
        if a not in met:
            return FullSetResult(False, ("level", a), most)
    return FullSetResult(True, (), most)


# -- Ramsey extraction ------------------------------------------------------------

@dataclass
class RamseyResult:
    branch: Branch | None
    coloring: dict               # (a0, a1) -> (b, g)
    H: tuple
    color: tuple | None

    def transcript(self) -> str:
        lines = [f"color {a0} {a1} = ({b},{g})" for (a0, a1), (b, g) in sorted(self.coloring.items())]
        lines.append("H " + " ".join(str(a) for a in self.H))
        if self.color is not None:
            lines.append(f"monochromatic ({self.color[0]},{self.color[1]})")
        lines.append(self.branch.render() if self.branch else "branch none")
        return "\n".join(lines) + "\n"


def _max_cliques(adj: list[int]) -> Iterator[int]:
    """Maximal cliques of a small graph given by adjacency masks (Bron-Kerbosch with pivot)."""
    def bk(r: int, p: int, x: int):
        if not p and not x:
            yield r
            return
        u = next(_bits(p | x))
        for v in _bits(p & ~adj[u]):
            yield from bk(r | (1 << v), p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v
    yield from bk(0, (1 << len(adj)) - 1, 0)


@lru_cache(maxsize=None)
def _mono_plan(n: int) -> tuple:
    """Subsets of ``range(n)`` with three proper subsets covering all their pairs.

    A set of size >= 3 is monochromatic in colour c iff the three subsets
    dropping its two lowest and its highest member are.  Returned grouped by
    size, largest first, members ascending within a size.
    """
    by_size: dict = {}
    for mask in range(1 << n):
        members = tuple(_bits(mask))
        if len(members) >= 2:
            by_size.setdefault(len(members), []).append((members, mask))
    build = []
    for size in sorted(by_size):
        for members, mask in by_size[size]:
            if size >= 3:
                a, b, c = members[0], members[1], members[-1]
                build.append((mask, mask ^ (1 << a), mask ^ (1 << b), mask ^ (1 << c)))
    groups = tuple(tuple(sorted(by_size[k])) for k in sorted(by_size, reverse=True))
    return tuple(build), groups


def _largest_homogeneous(n: int, coloring: dict) -> tuple:
    """``(colour, members)`` of a largest homogeneous set; ties go to the least colour, then members."""
    if n <= 12:
        build, groups = _mono_plan(n)
        mono = [None] * (1 << n)
        for (i, j), c in coloring.items():
            mono[(1 << i) | (1 << j)] = c
        for mask, x, y, z in build:
            c = mono[x]
            if c is not None and mono[y] == c and mono[z] == c:
                mono[mask] = c
        for group in groups:
            hits = [(mono[mask], members) for members, mask in group if mono[mask] is not None]
            if hits:
                return min(hits)
        raise AssertionError("unreachable: every pair is homogeneous")
    best = None
    for col in sorted(set(coloring.values())):
        adj = [0] * n
        for (i, j), c in coloring.items():
            if c == col:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        for clique in _max_cliques(adj):
            members = tuple(_bits(clique))
            key = (-len(members), col, members)
            if best is None or key < best:
                best = key
    return best[1], best[2]


def ramsey_branch(S: System, rel: str | None = None) -> RamseyResult:
    """Colour level pairs by their least connecting index pair and branch along a largest homogeneous set."""
    if rel is None:
        if len(S.relations) != 1:
            raise SystemError_("ramsey_branch needs a one-relation system or an explicit relation")
        rel = next(iter(S.relations))
    ix = S.index
    L = S.levels
    n = len(L)
    succ = ix.succ[rel]
    nodes = ix.nodes
    level_nodes = [tuple(_bits(m)) for m in ix.level_mask]
    coloring = {}
    for i in range(n):
        lows = level_nodes[i]
        for j in range(i + 1, n):
            hi_mask = ix.level_mask[j]
            for u in lows:
                hit = succ[u] & hi_mask
                if hit:
                    coloring[(i, j)] = (nodes[u][1], nodes[(hit & -hit).bit_length() - 1][1])
                    break
            else:
                raise Clause4Error(f"no edge between levels {L[i]} and {L[j]}")
    if n < 2:
        return RamseyResult(None, {}, tuple(L), None)
    col, members = _largest_homogeneous(n, coloring)
    H = tuple(L[i] for i in members)
    picked = frozenset((a, col[0]) for a in H[:-1])
    return RamseyResult(Branch(picked, rel) if picked else None,
                        {(L[i], L[j]): c for (i, j), c in coloring.items()}, H, col)
