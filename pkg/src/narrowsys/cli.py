"""Command-line front end.

Exit codes: 0 success, 1 a validation failure was found (the report is still
printed), 2 bad usage or unreadable input.  Reports go to stdout and are
byte-deterministic; timings and diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import formats
from .csequence import (
    CSequence,
    IndexedSequence,
    build_canonical,
    find_thread,
    limit_levels_upto,
    validate_geq_kappa,
    validate_indexed,
    validate_otp_flag,
    validate_square,
)
from .derived import NameError_, branch_transfer_check, derive_system, validate_name
from .ordinal import (
    OrdinalSyntaxError,
    add,
    compare,
    divides,
    fundamental_sequence,
    multiply,
    ordinal_grid,
    parse_ordinal,
)
from .suites import SUITES, SuiteConfig, run_suite
from .systems import (
    Clause4Error,
    System,
    SystemError_,
    find_cofinal_branch,
    from_subadditive,
    is_full_branch_set,
    ramsey_branch,
    reduce_to_single_relation,
    system_from_tree,
    validate_system,
)
from .walks import (
    SubadditiveFunction,
    WalkContext,
    WalkError,
    check_subadditivity,
    check_unbounded,
    lambda_kappa,
    render_subadditivity,
    rho_kappa,
    rho_table,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *a, **kw):
        kw.setdefault("allow_abbrev", False)
        super().__init__(*a, **kw)

    def error(self, message):
        raise UsageError(message)


def _ord(text: str):
    try:
        return parse_ordinal(text)
    except (OrdinalSyntaxError, ValueError) as exc:
        raise UsageError(f"bad ordinal {text!r}: {exc}") from exc


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc


# -- ord ------------------------------------------------------------------------------

def cmd_ord(args) -> tuple[str, int]:
    op = args.op
    if op == "fund":
        a = _ord(args.a)
        try:
            n = int(args.b)
            return f"{fundamental_sequence(a, n)}\n", 0
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    a, b = _ord(args.a), _ord(args.b)
    if op == "add":
        return f"{add(a, b)}\n", 0
    if op == "mul":
        return f"{multiply(a, b)}\n", 0
    if op == "cmp":
        return f"{compare(a, b)}\n", 0
    try:
        return f"{'true' if divides(a, b) else 'false'}\n", 0
    except ZeroDivisionError as exc:
        raise UsageError("divisor must be nonzero") from exc


# -- cseq -----------------------------------------------------------------------------

def _designated(text: str | None) -> list:
    if not text:
        return []
    return [_ord(x) for x in text.split(",") if x.strip()]


def cmd_cseq(args) -> tuple[str, int]:
    if args.op == "build":
        bound = _ord(args.bound)
        if limit_levels_upto(bound) is None:
            raise UsageError("build lists every limit level, so the bound must be below w^2")
        return formats.write_sequence(build_canonical(bound)), 0
    seq = formats.read_sequence(_read(args.file))
    if args.op == "validate":
        if isinstance(seq, IndexedSequence):
            rep = validate_indexed(seq)
        elif args.check == "geq":
            if args.kappa is None or args.mu is None:
                raise UsageError("--check geq needs --kappa and --mu")
            rep = validate_geq_kappa(seq, _ord(args.kappa), _ord(args.mu), _designated(args.designated))
        elif args.check == "otp":
            if args.kappa is None:
                raise UsageError("--check otp needs --kappa")
            rep = validate_otp_flag(seq, _ord(args.kappa), _designated(args.designated))
        else:
            variant = seq.variant if seq.variant in ("jensen", "bracket") else "bracket"
            mu = _ord(args.mu) if args.mu else None
            if variant == "jensen" and mu is None and seq.mu is None:
                raise UsageError("jensen sequences need mu= in the header or --mu")
            rep = validate_square(seq, variant, mu=mu, lambda_bound=args.lam)
        return rep.render(), 0 if rep.ok else 1
    top = _ord(args.top) if args.top else None
    if args.mode == "fixed_index" and not isinstance(seq, IndexedSequence):
        raise UsageError("fixed_index mode needs an indexed sequence file")
    res = find_thread(seq, args.mode, top=top, cap=args.cap)
    return res.render(), 1 if res.status == "cap-exceeded" else 0


# -- walk -----------------------------------------------------------------------------

def _walk_context(args, bound) -> WalkContext:
    kappa = _ord(args.kappa)
    if args.c == "canonical":
        return WalkContext(build_canonical(bound), kappa)
    seq = formats.read_sequence(_read(args.c))
    if isinstance(seq, IndexedSequence):
        raise UsageError("walks need one club per level")
    assign = {}
    for a in seq.levels():
        clubs = seq.clubs(a)
        if len(clubs) != 1:
            raise UsageError(f"level {a} has {len(clubs)} clubs; walks need exactly one")
        assign[a] = clubs[0]
    return WalkContext(CSequence(seq.bound, assign, successor_rule=True), kappa)


def _grid(text: str) -> dict:
    caps = {}
    try:
        for part in text.split(","):
            e, c = part.split(":")
            caps[int(e)] = int(c)
    except ValueError as exc:
        raise UsageError(f"bad --grid {text!r}; expected e:c,e:c") from exc
    return caps


def cmd_walk(args) -> tuple[str, int]:
    if args.op in ("lambda", "rho"):
        if args.alpha is None or args.beta is None:
            raise UsageError("--alpha and --beta are required")
        alpha, beta = _ord(args.alpha), _ord(args.beta)
        ctx = _walk_context(args, max(beta, _ord(args.bound)) if args.bound else beta)
        fn = lambda_kappa if args.op == "lambda" else rho_kappa
        try:
            return f"{fn(ctx, alpha, beta)}\n", 0
        except (WalkError, KeyError) as exc:
            raise UsageError(str(exc)) from exc
    pts = ordinal_grid(_grid(args.grid), _ord(args.below) if args.below else None)
    if not pts:
        raise UsageError("the grid is empty")
    ctx = _walk_context(args, max(pts))
    try:
        if args.op == "subadd":
            bad = check_subadditivity(ctx, pts)
            return render_subadditivity(len(pts), bad), 1 if bad else 0
        text = rho_table(ctx, pts)
        if args.sup and len(pts) >= 2:
            text += check_unbounded(SubadditiveFunction.from_walk(ctx, pts)).render()
        return text, 0
    except (WalkError, KeyError) as exc:
        raise UsageError(str(exc)) from exc


# -- system ---------------------------------------------------------------------------

def cmd_system(args) -> tuple[str, int]:
    if args.op == "from-d":
        d = formats.read_dfunc(_read(args.file))
        kappa = args.kappa if args.kappa is not None else int(d.range_kappa)
        S = from_subadditive(d, kappa)
        S = System(S.levels, S.width_at, S.relations)
        return formats.write_system(S), 0
    S = formats.read_system(_read(args.file))
    if args.op == "validate":
        rep = validate_system(S, strong=args.strong)
        return rep.render(), 0 if rep.ok else 1
    if args.op == "reduce":
        S2, corr = reduce_to_single_relation(S)
        text = formats.write_system(S2)
        if args.map:
            text += "".join(f"map ({a},{b}) = {rel} ({n[0]},{n[1]})\n"
                            for (a, b), (rel, n) in sorted(corr.items()))
        return text, 0
    if args.op == "branch":
        return find_cofinal_branch(S, args.fraction).render(), 0
    if args.op == "full":
        if not args.branches:
            raise UsageError("system full needs a branch-set file")
        res = is_full_branch_set(S, formats.read_branches(_read(args.branches)))
        return res.render(), 0 if res.ok else 1
    if args.op == "ramsey":
        try:
            res = ramsey_branch(S)
        except Clause4Error as exc:
            return f"ramsey undefined: {exc}\n", 1
        except SystemError_ as exc:
            raise UsageError(str(exc)) from exc
        return res.transcript(), 0
    # from-tree: the file holds a one-relation system whose relation is a tree order
    if len(S.relations) != 1:
        raise UsageError("from-tree expects exactly one relation")
    widths = set(S.width_at.values())
    if len(widths) != 1:
        raise UsageError("from-tree expects one width for every level")
    try:
        ts = system_from_tree(next(iter(S.relations.values())), S.levels, widths.pop())
    except SystemError_ as exc:
        return f"rejected {exc}\n", 1
    return f"admits {'yes' if ts.admits else 'no'}\n" + ts.report.render(), 0 if ts.admits else 1


# -- derive ---------------------------------------------------------------------------

def cmd_derive(args) -> tuple[str, int]:
    N, P = formats.read_name(_read(args.file))
    if args.close_downward:
        N = N.close_downward(P)
    if args.op == "validate":
        rep = validate_name(N, P)
        return rep.render(), 0 if rep.ok else 1
    try:
        if args.op == "build":
            return formats.write_system(derive_system(N, P)), 0
        rep = branch_transfer_check(N, P)
    except NameError_ as exc:
        return f"invalid name: {exc}\n", 1
    return rep.render(), 0 if rep.ok else 1


# -- suite ----------------------------------------------------------------------------

def _run_one(job):
    name, cfg = job
    return run_suite(name, cfg)


def cmd_suite(args) -> tuple[str, int]:
    names = formats.read_suite_config(_read(args.config))
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite {unknown[0]!r}")
    cfg = SuiteConfig(seed=args.seed, cap=args.cap)
    jobs = [(n, cfg) for n in names]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    for r in results:
        print(f"{r.name} {r.seconds:.1f}s", file=sys.stderr)
        for note in r.notes:
            print(f"{r.name} note: {note}", file=sys.stderr)
    text = "".join(r.render() + "\n" for r in results)
    return text, 0 if all(r.ok for r in results) else 1


# -- parser ---------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, top: bool) -> None:
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p.add_argument("--format", choices=("text", "json"), default=d("text"))
    p.add_argument("--cap", type=int, default=d(None), help="search cap (thread search, suites)")
    p.add_argument("--jobs", type=int, default=d(1), help="worker processes for suite runs")
    p.add_argument("--seed", type=int, default=d(0), help="seed for randomised suites")
    p.add_argument("--close-downward", action="store_true", default=d(False),
                   help="close name files downward before use")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="narrowsys", description="Ordinals, square sequences, walks and narrow systems.")
    _common(p, True)
    verbs = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def leaf(sub, name, **kw):
        q = sub.add_parser(name, **kw)
        _common(q, False)
        return q

    o = verbs.add_parser("ord", help="ordinal arithmetic").add_subparsers(dest="op", required=True, parser_class=_Parser)
    for op, h in (("add", "a + b"), ("mul", "a * b"), ("cmp", "compare a and b"),
                  ("div", "does a left-divide b"), ("fund", "a[n]")):
        q = leaf(o, op, help=h)
        q.add_argument("a")
        q.add_argument("b")

    c = verbs.add_parser("cseq", help="C-sequences").add_subparsers(dest="op", required=True, parser_class=_Parser)
    q = leaf(c, "build", help="canonical sequence up to a bound below w^2")
    q.add_argument("--bound", required=True)
    q = leaf(c, "validate", help="clause check of a sequence file")
    q.add_argument("file")
    q.add_argument("--check", choices=("square", "geq", "otp"), default="square")
    q.add_argument("--mu")
    q.add_argument("--lambda", dest="lam", type=int)
    q.add_argument("--kappa")
    q.add_argument("--designated", help="comma-separated ordinals")
    q = leaf(c, "thread", help="search for a thread")
    q.add_argument("file")
    q.add_argument("--mode", choices=("full", "fixed_index"), default="full")
    q.add_argument("--top")

    w = verbs.add_parser("walk", help="walks on ordinals").add_subparsers(dest="op", required=True, parser_class=_Parser)
    for op in ("lambda", "rho", "subadd", "table"):
        q = leaf(w, op)
        q.add_argument("--c", default="canonical", help="'canonical' or a sequence file")
        q.add_argument("--kappa", default="w")
        q.add_argument("--bound", help="sequence bound (defaults to the largest ordinal used)")
        if op in ("lambda", "rho"):
            q.add_argument("--alpha")
            q.add_argument("--beta")
        else:
            q.add_argument("--grid", default="1:19,0:5", help="CNF caps, e.g. 2:2,1:5,0:5")
            q.add_argument("--below")
            if op == "table":
                q.add_argument("--sup", action="store_true", help="append the sup of the table")

    s = verbs.add_parser("system", help="narrow systems").add_subparsers(dest="op", required=True, parser_class=_Parser)
    for op in ("validate", "from-d", "reduce", "branch", "full", "ramsey", "from-tree"):
        q = leaf(s, op)
        q.add_argument("file")
        if op == "validate":
            q.add_argument("--strong", action="store_true")
        if op == "from-d":
            q.add_argument("--kappa", type=int)
        if op == "reduce":
            q.add_argument("--map", action="store_true", help="print the node correspondence")
        if op == "branch":
            q.add_argument("--fraction", type=float, default=1.0)
        if op == "full":
            q.add_argument("branches", nargs="?")

    dv = verbs.add_parser("derive", help="derived systems").add_subparsers(dest="op", required=True, parser_class=_Parser)
    for op in ("validate", "build", "transfer"):
        leaf(dv, op).add_argument("file")

    su = verbs.add_parser("suite", help="acceptance suites").add_subparsers(dest="op", required=True, parser_class=_Parser)
    leaf(su, "run").add_argument("config")
    return p


HANDLERS = {"ord": cmd_ord, "cseq": cmd_cseq, "walk": cmd_walk, "system": cmd_system,
            "derive": cmd_derive, "suite": cmd_suite}


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text, code = HANDLERS[args.verb](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except formats.FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        text = json.dumps({"verb": args.verb, "op": args.op, "exit": code,
                           "lines": text.splitlines()}, sort_keys=True) + "\n"
    sys.stdout.write(text)
    sys.stdout.flush()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
