"""Regenerate the subadditivity golden file from the cache-free walk oracle.

The scan covers every triple a < b < c among w*a + c (a < 20, c <= 5) for the
canonical sequence with kappa = w.  Only the oracle module is used here, so
the file is an independent record of what the memoised walks must reproduce.
"""
from __future__ import annotations

import argparse
from itertools import combinations
from pathlib import Path

from narrowsys.oracles import naive_rho
from narrowsys.ordinal import ordinal_grid, parse_ordinal

DEFAULT = Path(__file__).resolve().parents[1] / "src" / "narrowsys" / "golden" / "a4_subadditivity.txt"


def build() -> str:
    w = parse_ordinal("w")
    pts = ordinal_grid({1: 19, 0: 5})
    rho = {(a, b): naive_rho(a, b, w) for a, b in combinations(pts, 2)}
    rows = []
    for a, b, c in combinations(pts, 3):
        ab, ac, bc = rho[a, b], rho[a, c], rho[b, c]
        if ac > max(ab, bc):
            rows.append(f"violation prop1 {a} {b} {c} : {ab} {ac} {bc}")
        if ab > max(ac, bc):
            rows.append(f"violation prop2 {a} {b} {c} : {ab} {ac} {bc}")
    n = len(pts)
    head = f"subadditivity triples={n * (n - 1) * (n - 2) // 6} violations={len(rows)}"
    return "\n".join([head] + rows) + "\n"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=DEFAULT)
    args = ap.parse_args()
    text = build()
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(text)
    print(f"wrote {args.out} ({text.splitlines()[0]})")


if __name__ == "__main__":
    main()
