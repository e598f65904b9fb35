"""Run every ExperimentConfig JSON file in a directory through the CLI runner."""

import argparse
import sys
from pathlib import Path

from endoring.cli import run
from endoring.config import ExperimentConfig


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("configs", nargs="*", default=sorted(Path("configs").glob("*.json")))
    args = ap.parse_args(argv)

    worst = 0
    for path in map(Path, args.configs):
        cfg = ExperimentConfig.load(path)
        if cfg.output:
            Path(cfg.output).parent.mkdir(parents=True, exist_ok=True)
        code = run(cfg)
        print(f"{path.name}: exit {code}", file=sys.stderr)
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
