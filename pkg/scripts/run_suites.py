"""Run acceptance suites in-process and write a JSON record of counts and timings.

Smaller instance counts are useful for quick iterations, e.g.
``python scripts/run_suites.py A5 A7 --a7-samples 2000``.
"""
from __future__ import annotations

import argparse
import json
import platform
from dataclasses import asdict
from pathlib import Path

from narrowsys.suites import SUITES, SuiteConfig, run_suite


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("suites", nargs="*", default=sorted(SUITES), help="suite names (default: all)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--a5-instances", type=int, default=SuiteConfig.a5_instances)
    ap.add_argument("--a6-instances", type=int, default=SuiteConfig.a6_instances)
    ap.add_argument("--a7-samples", type=int, default=SuiteConfig.a7_samples_per_poset)
    ap.add_argument("--a8-max-kappa", type=int, default=SuiteConfig.a8_max_kappa)
    ap.add_argument("--out", type=Path, help="JSON file for the results")
    args = ap.parse_args()

    unknown = [s for s in args.suites if s not in SUITES]
    if unknown:
        ap.error(f"unknown suite {unknown[0]}")
    cfg = SuiteConfig(seed=args.seed, a5_instances=args.a5_instances, a6_instances=args.a6_instances,
                      a7_samples_per_poset=args.a7_samples, a8_max_kappa=args.a8_max_kappa)
    results = []
    for name in args.suites:
        r = run_suite(name, cfg)
        print(f"{r.render():<28} {r.seconds:7.1f}s", flush=True)
        for note in r.notes:
            print(f"    {note}")
        results.append({"name": r.name, "passed": r.passed, "total": r.total,
                        "seconds": round(r.seconds, 2), "notes": r.notes})
    if args.out:
        record = {"config": asdict(cfg), "python": platform.python_version(), "results": results}
        args.out.write_text(json.dumps(record, indent=2) + "\n")
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
