#!/usr/bin/env python3
"""Exact greedy ratios on the hard bridge-flow family.

For each k, simulates greedy for 2k steps, pins the optimum through the
witness-equals-full-graph argument, and checks the closed-form ratio
2 q^(2k) / (q^(2k) - 1) with q = k/(k-1). The column `gap` shows the
distance to the asymptotic greedy bound 2e^2/(e^2-1).

Usage: python scripts/bridge_flow_greedy_table.py [--kmin 2] [--kmax 8]
"""

import argparse
import pathlib
import sys
from fractions import Fraction

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from incmax import bridge_flow_objective, evaluate, greedy, greedy_bound
from incmax.adversarial import (
    bridge_flow_family_optimum_witness,
    bridge_flow_family_ratio,
    gen_bridge_flow_family,
)


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--kmin", type=int, default=2)
    parser.add_argument("--kmax", type=int, default=8)
    args = parser.parse_args()

    limit = greedy_bound(2)
    print(f"asymptotic greedy bound at alpha=2: {limit:.10f}")
    print(f"{'k':>3} {'greedy_2k':>14} {'opt_2k':>14} {'ratio':>18} {'gap':>12}")
    for k in range(args.kmin, args.kmax + 1):
        inst = bridge_flow_objective(gen_bridge_flow_family(k))
        order, _ = greedy(inst, 2 * k)
        greedy_value = evaluate(inst, order.prefix_mask(2 * k))
        opt = evaluate(inst, bridge_flow_family_optimum_witness(k))
        assert opt == evaluate(inst, (1 << inst.n) - 1)
        ratio = Fraction(opt) / greedy_value
        assert ratio == bridge_flow_family_ratio(k)
        print(
            f"{k:>3} {float(greedy_value):>14.4f} {float(opt):>14.4f} "
            f"{str(ratio):>18} {limit - float(ratio):>12.6f}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
