"""Observed Bessel constants B / (||g||_{S0,g}^2 ||g||^2) per subgroup, windows normalized to ||g|| = 1.

No sharp constant is claimed; this just tabulates the worst ratio seen per subgroup
order, together with the slack in the S0 product bound.
"""
import argparse
from collections import defaultdict

import numpy as np

from gaborlca import s0_appendix as s0
from gaborlca.group_core import GroupSpec, Window
from gaborlca.subgroup_lattice import all_subgroups


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("orders", nargs="?", default="4")
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    spec = GroupSpec(tuple(int(x) for x in a.orders.split(",")))
    rng = np.random.default_rng(a.seed)
    worst = defaultdict(float)
    for delta in all_subgroups(spec):
        for _ in range(a.samples):
            g = Window.random(spec, rng)
            g = g.scaled(1 / g.norm())
            worst[len(delta)] = max(worst[len(delta)], s0.bessel_ratio(g, delta))
    for k in sorted(worst):
        print(f"|Delta|={k:>3}  max ratio {worst[k]:.4f}")
    slack = []
    for _ in range(a.samples):
        r = s0.thm_a3_bound_check(*(Window.random(spec, rng) for _ in range(5)))
        slack.append(r.witnesses["lhs"] / r.witnesses["rhs"])
    print(f"S0 product bound: lhs/rhs in [{min(slack):.3f}, {max(slack):.3f}]")


if __name__ == "__main__":
    main()
