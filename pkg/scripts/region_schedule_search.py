#!/usr/bin/env python3
"""Best structured schedules for region-choosing instances of growing size.

Reports, per instance size N, the exact minimum worst-case ratio over all
structured incremental solutions, the optimal region sequence, and whether
that sequence satisfies the necessary competitiveness condition at the
asymptotic target ratio.

Usage: python scripts/region_schedule_search.py [--beta 0.86] [--rho 2.18]
           [--sizes 5,10,20,40]
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from incmax.adversarial import best_region_schedule, check_schedule_condition


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--beta", type=float, default=0.86)
    parser.add_argument("--rho", type=float, default=2.18)
    parser.add_argument("--sizes", default="5,10,20,40")
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"beta={args.beta}  condition threshold rho^(1/beta)={args.rho ** (1 / args.beta):.6f}")
    print(f"{'N':>4} {'worst_ratio':>12}  {'condition':>9}  schedule")
    for n in sizes:
        seq, ratio = best_region_schedule(n, args.beta)
        holds, _ = check_schedule_condition(seq, args.rho, args.beta)
        print(f"{n:>4} {ratio:>12.6f}  {str(holds):>9}  {list(seq.ks)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
