"""Distribution of homogeneous-set sizes found by the Ramsey extraction.

Enumerates the one-relation forest systems of the A8 suite (or a seeded
sample of them) and tabulates |H| and the number of colours used.  With at
most two colours on six levels every row should have |H| >= 3.
"""
from __future__ import annotations

import argparse
import random
from collections import Counter
from dataclasses import dataclass
from itertools import islice

from narrowsys.ordinal import finite
from narrowsys.suites import iter_forests
from narrowsys.systems import System, ramsey_branch


@dataclass
class ProfileConfig:
    levels: int = 6
    kappa: int = 2
    sample: int | None = 20_000    # None for every forest
    seed: int = 0


def systems(cfg: ProfileConfig):
    levels = tuple(finite(k) for k in range(cfg.levels))
    nodes = [(levels[i // cfg.kappa], i % cfg.kappa) for i in range(cfg.levels * cfg.kappa)]
    widths = {a: cfg.kappa for a in levels}
    forests = iter_forests(cfg.levels, cfg.kappa)
    if cfg.sample is not None:
        # reservoir sample keeps memory flat on the 850k-forest enumeration
        rng = random.Random(cfg.seed)
        keep = list(islice(forests, cfg.sample))
        for k, f in enumerate(forests, cfg.sample):
            j = rng.randrange(k + 1)
            if j < cfg.sample:
                keep[j] = f
        forests = iter(keep)
    for _, anc in forests:
        edges = frozenset((nodes[a], nodes[v]) for v, m in enumerate(anc)
                          for a in range(len(nodes)) if m >> a & 1)
        yield System.fast(levels, widths, {"R": edges})


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--levels", type=int, default=6)
    ap.add_argument("--kappa", type=int, default=2)
    ap.add_argument("--sample", type=int, default=20_000, help="0 for the full enumeration")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = ProfileConfig(args.levels, args.kappa, args.sample or None, args.seed)
    table = Counter()
    for S in systems(cfg):
        r = ramsey_branch(S)
        table[(len(set(r.coloring.values())), len(r.H))] += 1
    print("colours |H| count")
    for (c, h), k in sorted(table.items()):
        print(f"{c:7d} {h:3d} {k}")


if __name__ == "__main__":
    main()
