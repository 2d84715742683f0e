"""Observed sup of rho_w on initial segments of an unbounded set, as the segment grows.

The canonical sequence is coherent and has threads, so nothing forces
unbounded values.  On I_N = {w*n : 1 <= n <= N} the sup sits at 1 for every N.
On the staggered family {w*n + n} it climbs roughly like N, driven only by the
order-type term of the walk.  The script prints one CSV row per N.
"""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

from narrowsys.ordinal import Ordinal, parse_ordinal
from narrowsys.walks import SubadditiveFunction, WalkContext, check_unbounded


@dataclass
class GrowthConfig:
    family: str = "w"          # "w" for w*n, "stagger" for w*n + n
    max_n: int = 24
    kappa: str = "w"


def points(cfg: GrowthConfig, n: int) -> list[Ordinal]:
    if cfg.family == "stagger":
        return [parse_ordinal(f"w*{k}+{k}") for k in range(1, n + 1)]
    return [parse_ordinal(f"w*{k}") for k in range(1, n + 1)]


def run(cfg: GrowthConfig):
    ctx = WalkContext.canonical(points(cfg, cfg.max_n)[-1], parse_ordinal(cfg.kappa))
    for n in range(2, cfg.max_n + 1):
        pts = points(cfg, n)
        rep = check_unbounded(SubadditiveFunction.from_walk(ctx, pts))
        first = rep.attained_pairs[0]
        yield n, str(rep.sup_observed), len(rep.attained_pairs), f"({first[0]},{first[1]})"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", choices=("w", "stagger"), default="w")
    ap.add_argument("--max-n", type=int, default=24)
    ap.add_argument("--kappa", default="w")
    args = ap.parse_args()
    cfg = GrowthConfig(args.family, args.max_n, args.kappa)
    out = csv.writer(sys.stdout)
    out.writerow(["n", "sup", "attaining_pairs", "first_pair"])
    for row in run(cfg):
        out.writerow(row)


if __name__ == "__main__":
    main()
