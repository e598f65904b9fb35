"""Layer criterion versus brute force on the default battery, as a table."""

import argparse
import json
import sys
import time

from endoring.battery import DEFAULT_BATTERY, check_group
from endoring.groups import PGroup


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("groups", nargs="*", default=list(DEFAULT_BATTERY))
    ap.add_argument("--json", action="store_true", help="emit JSON rows instead of a table")
    args = ap.parse_args(argv)

    rows = []
    for lit in args.groups:
        t0 = time.perf_counter()
        r = check_group(PGroup.parse(lit))
        rows.append({**vars(r), "passed": r.passed, "seconds": round(time.perf_counter() - t0, 3)})
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'group':<16}{'|End|':>8}{'|J|':>8}  agrees  count  secs")
        for r in rows:
            print(f"{r['group']:<16}{r['order_end']:>8}{r['order_radical']:>8}  "
                  f"{str(r['agrees']):<7} {str(r['quotient_count_ok']):<6} {r['seconds']}")
    return 0 if all(r["passed"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
