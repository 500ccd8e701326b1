#!/usr/bin/env python3
"""Run the default experiment ladder and write one CSV.

Default grid: n in {2^14, 2^16, 2^18, 2^20}, c in {1.5, 2}, k in {16, 64, 256},
200 trials per cell. This is hours of compute at full size; use --trials and
--n to cut it down for a quick look.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from gapedit.harness import GridConfig, run_grid


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="ladder.csv")
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--tester", default="main")
    ap.add_argument(
        "--n", type=int, nargs="*", default=[1 << 14, 1 << 16, 1 << 18, 1 << 20]
    )
    ap.add_argument("--k", type=int, nargs="*", default=[16, 64, 256])
    ap.add_argument("--c", type=float, nargs="*", default=[1.5, 2.0])
    args = ap.parse_args()

    config = GridConfig(
        n=tuple(args.n),
        k=tuple(args.k),
        c=tuple(args.c),
        tester=(args.tester,),
        family=("random-edits",),
        trials=args.trials,
        seed=args.seed,
        delta=0.1,
    )
    t0 = time.time()
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        result = run_grid(config, fh)
    print(
        f"wrote {args.out}: {result.rows} rows, {result.cells} cells, "
        f"{result.unsupported_cells} unsupported, {time.time() - t0:.1f}s"
    )
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
