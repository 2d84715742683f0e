"""Line-oriented text formats for sequences, systems, names and d-functions.

Readers skip blank lines and ``#`` comments.  Writers emit one canonical
form, so ``write(read(text))`` is a fixed point after the first pass.
"""
from __future__ import annotations

import re
from typing import Iterable

from .csequence import CollectionSequence, CSequence, IndexedSequence
from .derived import FinitePoset, SystemName
from .ordinal import Ordinal, OrdinalSyntaxError, parse_ordinal
from .ordsets import OrdinalSet, Tail
from .systems import Branch, System, node_str
from .walks import SubadditiveFunction

__all__ = [
    "FormatError",
    "parse_set",
    "format_set",
    "parse_node",
    "read_sequence",
    "write_sequence",
    "read_system",
    "write_system",
    "read_name",
    "write_name",
    "read_dfunc",
    "write_dfunc",
    "read_branches",
    "write_branches",
    "read_suite_config",
    "read_any",
]


class FormatError(ValueError):
    def __init__(self, msg: str, lineno: int | None = None):
        super().__init__(msg if lineno is None else f"line {lineno}: {msg}")


def _lines(text: str):
    for k, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield k, line


def _ord(s: str, k: int | None = None) -> Ordinal:
    try:
        return parse_ordinal(s.strip())
    except (OrdinalSyntaxError, ValueError) as exc:
        raise FormatError(f"bad ordinal {s.strip()!r}: {exc}", k) from exc


def _kv(tokens: Iterable[str], k: int) -> dict:
    out = {}
    for t in tokens:
        if "=" not in t:
            raise FormatError(f"expected key=value, got {t!r}", k)
        key, val = t.split("=", 1)
        out[key] = val
    return out


def _int(s: str, k: int) -> int:
    try:
        return int(s)
    except ValueError as exc:
        raise FormatError(f"bad integer {s!r}", k) from exc


_TAIL = re.compile(r"^(.*)\[(\d+)\.\.\]$")


def parse_set(text: str, k: int | None = None) -> OrdinalSet:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise FormatError(f"set must be braced: {text!r}", k)
    body = text[1:-1].strip()
    pieces = []
    if body:
        for item in body.split(","):
            item = item.strip()
            m = _TAIL.match(item)
            try:
                pieces.append(Tail(_ord(m.group(1), k), int(m.group(2))) if m else _ord(item, k))
            except ValueError as exc:
                if isinstance(exc, FormatError):
                    raise
                raise FormatError(str(exc), k) from exc
    return OrdinalSet(pieces)


def format_set(s: OrdinalSet) -> str:
    return str(s)


def parse_node(text: str, k: int | None = None) -> tuple:
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")) or "," not in text:
        raise FormatError(f"bad node {text!r}", k)
    a, b = text[1:-1].rsplit(",", 1)
    return (_ord(a, k), _int(b.strip(), k))


def _edge(rest: str, k: int) -> tuple:
    if "->" not in rest:
        raise FormatError("edge needs '->'", k)
    u, v = rest.split("->", 1)
    return parse_node(u, k), parse_node(v, k)


# -- sequences ------------------------------------------------------------------

def read_sequence(text: str):
    it = iter(_lines(text))
    try:
        k, head = next(it)
    except StopIteration:
        raise FormatError("empty sequence file") from None
    tok = head.split()
    if tok[0] != "csequence" or len(tok) < 2:
        raise FormatError("expected 'csequence <variant> bound=<CNF>'", k)
    variant = tok[1]
    kv = _kv(tok[2:], k)
    if "bound" not in kv:
        raise FormatError("missing bound=", k)
    bound = _ord(kv["bound"], k)
    if variant == "indexed":
        if "kappa" not in kv:
            raise FormatError("indexed sequence needs kappa=", k)
        return _read_indexed(it, bound, _int(kv["kappa"], k))
    if variant not in ("jensen", "bracket", "explicit"):
        raise FormatError(f"unknown variant {variant!r}", k)
    mu = _ord(kv["mu"], k) if "mu" in kv else None
    lam = _int(kv["lambda"], k) if "lambda" in kv else None
    assign = {}
    for k, line in it:
        if not line.startswith("level ") or ":" not in line:
            raise FormatError("expected 'level <CNF> : {...}'", k)
        lhs, rhs = line[len("level "):].split(":", 1)
        a = _ord(lhs, k)
        if a in assign:
            raise FormatError(f"duplicate level {a}", k)
        assign[a] = tuple(parse_set(part, k) for part in rhs.split(";"))
    return CollectionSequence(bound, assign, mu=mu, lambda_bound=lam, variant=variant)


_IDX_LEVEL = re.compile(r"^level\s+(.+?)\s+i\((.+)\)=(\d+)\s*:(.*)$")
_IDX_CLUB = re.compile(r"^idx=(\d+)\s*(\{.*\})$")


def _read_indexed(it, bound, kappa) -> IndexedSequence:
    i_of, assign = {}, {}
    for k, line in it:
        m = _IDX_LEVEL.match(line)
        if not m:
            raise FormatError("expected 'level <CNF> i(<CNF>)=<int> : idx=<int> {...} ; ...'", k)
        a = _ord(m.group(1), k)
        if _ord(m.group(2), k) != a:
            raise FormatError("i(...) must name the level itself", k)
        i_of[a] = int(m.group(3))
        for part in m.group(4).split(";"):
            c = _IDX_CLUB.match(part.strip())
            if not c:
                raise FormatError(f"bad indexed club {part.strip()!r}", k)
            assign[(a, int(c.group(1)))] = parse_set(c.group(2), k)
    return IndexedSequence(bound, kappa, i_of, assign)


def write_sequence(seq) -> str:
    if isinstance(seq, IndexedSequence):
        lines = [f"csequence indexed bound={seq.bound} kappa={seq.kappa}"]
        for a in sorted(seq.i_of):
            clubs = [f"idx={i} {c}" for (b, i), c in sorted(seq.assign.items()) if b == a]
            lines.append(f"level {a} i({a})={seq.i_of[a]} : " + " ; ".join(clubs))
        return "\n".join(lines) + "\n"
    if isinstance(seq, CSequence):
        seq = seq.as_collection()
    head = f"csequence {seq.variant} bound={seq.bound}"
    if seq.mu is not None:
        head += f" mu={seq.mu}"
    if seq.lambda_bound is not None:
        head += f" lambda={seq.lambda_bound}"
    lines = [head]
    for a in seq.levels():
        clubs = seq.clubs(a) or ()
        lines.append(f"level {a} : " + " ; ".join(str(c) for c in clubs))
    return "\n".join(lines) + "\n"


# -- systems ----------------------------------------------------------------------

def read_system(text: str) -> System:
    it = iter(_lines(text))
    try:
        k, head = next(it)
    except StopIteration:
        raise FormatError("empty system file") from None
    tok = head.split()
    if tok[0] != "system":
        raise FormatError("expected 'system levels=<n>'", k)
    kv = _kv(tok[1:], k)
    widths, rels, top, intended = {}, {}, [], None
    for k, line in it:
        word, _, rest = line.partition(" ")
        if word == "level":
            parts = rest.rsplit(" ", 1)
            if len(parts) != 2 or not parts[1].startswith("width="):
                raise FormatError("expected 'level <CNF> width=<k>'", k)
            widths[_ord(parts[0], k)] = _int(parts[1][6:], k)
        elif word == "relation":
            rels.setdefault(rest.strip(), set())
        elif word == "edge":
            name, _, e = rest.strip().partition(" ")
            rels.setdefault(name, set()).add(_edge(e, k))
        elif word == "top":
            top.append(_ord(rest, k))
        elif word == "intended":
            iv = _kv(rest.split(), k)
            intended = (_int(iv.get("width", ""), k), _int(iv.get("height", ""), k))
        else:
            raise FormatError(f"unknown line {word!r}", k)
    if "levels" in kv and _int(kv["levels"], 1) != len(widths):
        raise FormatError(f"header says {kv['levels']} levels, found {len(widths)}")
    try:
        S = System(tuple(widths), widths, rels, tuple(top), intended)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    return S


def write_system(S: System) -> str:
    lines = [f"system levels={len(S.levels)}"]
    lines += [f"level {a} width={S.width_at[a]}" for a in S.levels]
    lines += [f"relation {name}" for name in S.relations]
    for name in S.relations:
        lines += [f"edge {name} {node_str(u)} -> {node_str(v)}" for u, v in sorted(S.relations[name])]
    lines += [f"top {a}" for a in S.top]
    if S.intended is not None:
        lines.append(f"intended width={S.intended[0]} height={S.intended[1]}")
    return "\n".join(lines) + "\n"


def read_branches(text: str) -> list[Branch]:
    out = []
    for k, line in _lines(text):
        if line == "branchset":
            continue
        word, _, rest = line.partition(" ")
        if word != "branch":
            raise FormatError("expected 'branch <rel> (<CNF>,<int>) ...'", k)
        name, _, nodes = rest.strip().partition(" ")
        found = re.findall(r"\([^()]*(?:\([^()]*\)[^()]*)*\)", nodes)
        out.append(Branch(frozenset(parse_node(n, k) for n in found), name))
    return out


def write_branches(B: list[Branch]) -> str:
    return "branchset\n" + "".join(b.render() + "\n" for b in B)


# -- names ------------------------------------------------------------------------

def read_name(text: str) -> tuple[SystemName, FinitePoset]:
    it = iter(_lines(text))
    try:
        k, head = next(it)
    except StopIteration:
        raise FormatError("empty name file") from None
    tok = head.split()
    if tok[0] != "name":
        raise FormatError("expected 'name levels=<n> relations=<tau>'", k)
    kv = _kv(tok[1:], k)
    tau = _int(kv.get("relations", "1"), k)
    elems, le, widths, decided = [], set(), {}, {}
    for k, line in it:
        word, _, rest = line.partition(" ")
        parts = rest.split()
        if word == "elem" and len(parts) == 1:
            elems.append(parts[0])
        elif word == "le" and len(parts) == 2:
            le.add((parts[0], parts[1]))
        elif word == "level":
            bits = rest.rsplit(" ", 1)
            if len(bits) != 2 or not bits[1].startswith("width="):
                raise FormatError("expected 'level <CNF> width=<k>'", k)
            widths[_ord(bits[0], k)] = _int(bits[1][6:], k)
        elif word == "forces":
            p, i, e = rest.strip().split(" ", 2)
            u, v = _edge(e, k)
            decided.setdefault((_int(i, k), u, v), set()).add(p)
        else:
            raise FormatError(f"unknown line {word!r}", k)
    if "levels" in kv and _int(kv["levels"], 1) != len(widths):
        raise FormatError(f"header says {kv['levels']} levels, found {len(widths)}")
    return SystemName(tuple(widths), widths, tau, decided), FinitePoset(tuple(elems), frozenset(le))


def write_name(N: SystemName, P: FinitePoset) -> str:
    lines = [f"name levels={len(N.levels)} relations={N.tau}"]
    lines += [f"elem {p}" for p in P.elements]
    lines += [f"le {q} {p}" for q, p in sorted(P.le) if q != p]
    lines += [f"level {a} width={N.width_at[a]}" for a in N.levels]
    rows = []
    for (i, u, v), ps in N.decided.items():
        rows += [(p, i, u, v) for p in ps]
    lines += [f"forces {p} {i} {node_str(u)} -> {node_str(v)}" for p, i, u, v in sorted(rows)]
    return "\n".join(lines) + "\n"


# -- d-functions --------------------------------------------------------------------

def read_dfunc(text: str) -> SubadditiveFunction:
    it = iter(_lines(text))
    try:
        k, head = next(it)
    except StopIteration:
        raise FormatError("empty dfunc file") from None
    tok = head.split()
    if tok[0] != "dfunc":
        raise FormatError("expected 'dfunc kappa=<k>'", k)
    kv = _kv(tok[1:], k)
    kappa = _ord(kv.get("kappa", ""), k)
    points, values = set(), {}
    for k, line in it:
        word, _, rest = line.partition(" ")
        if word == "point":
            points.add(_ord(rest, k))
        elif word == "d":
            lhs, _, val = rest.partition("=")
            ab = lhs.split()
            if len(ab) != 2:
                raise FormatError("expected 'd <CNF> <CNF> = <value>'", k)
            a, b = _ord(ab[0], k), _ord(ab[1], k)
            points |= {a, b}
            values[(a, b)] = _ord(val, k)
        else:
            raise FormatError(f"unknown line {word!r}", k)
    try:
        return SubadditiveFunction(tuple(points), kappa, values)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def write_dfunc(d: SubadditiveFunction) -> str:
    lines = [f"dfunc kappa={d.range_kappa}"]
    lines += [f"point {a}" for a in d.domain]
    lines += [f"d {a} {b} = {v}" for (a, b), v in sorted(d.values.items())]
    return "\n".join(lines) + "\n"


# -- misc -------------------------------------------------------------------------

def read_suite_config(text: str) -> list[str]:
    names = []
    for k, line in _lines(text):
        if len(line.split()) != 1:
            raise FormatError("one suite name per line", k)
        names.append(line)
    return names


def read_any(text: str):
    """Dispatch on the header word."""
    for _, line in _lines(text):
        word = line.split()[0]
        break
    else:
        raise FormatError("empty file")
    readers = {"csequence": read_sequence, "system": read_system, "name": read_name,
               "dfunc": read_dfunc, "branchset": read_branches, "branch": read_branches}
    if word not in readers:
        raise FormatError(f"unknown file kind {word!r}")
    return word, readers[word](text)
