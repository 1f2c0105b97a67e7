#!/usr/bin/env python3
"""Sweep parameter regimes and compare the field-size bounds of the three
constructions against each other and against the lower bound.

Each construction's bound has a different dominant exponent
(t + N(r-t) for the generator-side code, hN and g(N(delta-1)+t)+h for the
parity-check codes), so each wins somewhere; this sweep makes the regimes
visible.  Usage:

    python scripts/field_size_comparison.py [--max-r 5] [--max-g 6]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from mrlrc.constructions import ConstraintViolated, plan_field  # noqa: E402
from mrlrc.topology import make_topology  # noqa: E402
from mrlrc.verify import BoundInputs, lower_bound_field  # noqa: E402


def bound_or_none(topo, kind, h):
    try:
        if kind == "gen":
            plan = plan_field(topo, kind, k=topo.max_dimension() - h)
        else:
            plan = plan_field(topo, kind, h=h)
    except (ConstraintViolated, ValueError):
        return None
    return plan.bound_value


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-r", type=int, default=5)
    ap.add_argument("--max-g", type=int, default=6)
    ap.add_argument("--delta", type=int, default=2)
    ap.add_argument("--N", type=int, default=2)
    args = ap.parse_args()

    header = (f"{'r':>2} {'t':>2} {'g':>2} {'h':>2} "
              f"{'gen':>14} {'pc1':>14} {'pc2':>18} {'winner':>7} {'lower':>8}")
    print(header)
    print("-" * len(header))
    wins = {"gen": 0, "pc1": 0, "pc2": 0}
    for r in range(1, args.max_r + 1):
        for t in range(1, min(args.delta - 1, r) + 1):
            for g in range(1, args.max_g + 1):
                mode = "availability" if t <= args.delta - 1 else "plain"
                topo = make_topology(r, args.delta, t, g, args.N, mode=mode)
                for h in range(1, min(r, topo.max_dimension()) + 1):
                    cells = {kind: bound_or_none(topo, kind, h)
                             for kind in ("gen", "pc1", "pc2")}
                    present = {k: v for k, v in cells.items() if v is not None}
                    if not present:
                        continue
                    winner = min(present, key=present.get)
                    wins[winner] += 1
                    lb = lower_bound_field(BoundInputs(
                        r=r, delta=args.delta, t=t, g=g, N=args.N, h=h))
                    lb_cell = ("-" if lb.regime == "none"
                               else f"{lb.floor}({lb.regime})")
                    fmt = lambda v: "-" if v is None else str(v)
                    print(f"{r:>2} {t:>2} {g:>2} {h:>2} "
                          f"{fmt(cells['gen']):>14} {fmt(cells['pc1']):>14} "
                          f"{fmt(cells['pc2']):>18} {winner:>7} {lb_cell:>8}")
    print()
    total = sum(wins.values())
    for kind, count in wins.items():
        print(f"{kind} achieves the smallest bound in {count}/{total} settings")
    return 0


if __name__ == "__main__":
    sys.exit(main())
