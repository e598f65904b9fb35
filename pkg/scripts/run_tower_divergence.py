"""Quasi-inverse support across tower stages for several exponent rules.

Writes one CSV per rule into the output directory and prints a summary.
Constant rules land in the bounded regime and produce no table.
"""

import argparse
import sys
from pathlib import Path

from endoring.cli import write_atomic
from endoring.tower import BoundedTower, TowerSpec, divergence_report, reports_to_csv

RULES = ("rule:i+1", "rule:2*i+1", "1,3,7,8,10", "rule:3")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--stages", type=int, default=4)
    ap.add_argument("--out", default="results/tower")
    ap.add_argument("--rules", nargs="*", default=list(RULES))
    args = ap.parse_args(argv)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ok = True
    for rule in args.rules:
        T = TowerSpec.from_text(args.p, rule, args.stages)
        try:
            reps = divergence_report(T)
        except BoundedTower:
            print(f"{rule:<14} bounded: radical closed regime")
            continue
        name = rule.replace("rule:", "").replace("*", "x").replace("+", "p").replace(",", "_")
        write_atomic(out / f"p{args.p}_{name}.csv", reports_to_csv(reps))
        supports = [r.quasi_inverse_support for r in reps]
        good = all(r.invariant_ok for r in reps)
        ok &= good
        print(f"{rule:<14} supports={supports} invariant={'ok' if good else 'VIOLATED'}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
