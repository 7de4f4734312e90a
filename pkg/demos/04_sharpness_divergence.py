#!/usr/bin/env python3
"""Why the exponent cannot be lowered: the divergence experiment.

The extremal family couples singular powers so that for p below the sharp
exponent, every norm on the right stays finite while the product integral
on the left blows up logarithmically as the truncation floor shrinks.
A subcritical strength serves as negative control: its truncated series
converges, visible in the geometric decay of its increments.
"""

import math

from spherebl import BalancedType, QuadConfig, norm_boundary_scan, sharpness_experiment
from spherebl.symmetry import EdgeSet, decompose

cfg = QuadConfig(samples=200_000, seed=7, shards=4)
grid = [2.0 ** -k for k in range(3, 15)]
t = BalancedType(3, (2,))

print("Truncated norm scans for one extremal function (n=3, single block):")
s = decompose(EdgeSet.of(3, [(1, 2)]))
for gamma, p in [(0.25, 2.0), (0.75, 2.0)]:
    rep = norm_boundary_scan(s, gamma=gamma, p=p,
                             eps_grid=[2.0 ** -k for k in range(4, 10)], cfg=cfg)
    print(f"  gamma*p = {gamma * p:.1f}: slope {rep.slope:+.3f} "
          f"(+-{rep.slope_stderr:.3f}) -> {rep.classification}")

print("\nCritical run: p = 1.8 < 2 = sharp exponent, gamma = 1/2")
rep = sharpness_experiment(t, p=1.8, cfg=cfg, eps_grid=grid, gamma=0.5)
print(f"  norms stable: {rep.rhs_converged} (last relative change "
      f"{rep.rhs_rel_change:.2%})")
print(f"  product series slope {rep.slope:.2f} (+-{rep.slope_stderr:.2f}) "
      f"per unit log(1/eps)")
print(f"  increment decay {rep.incr_decay_slope:+.3f} -> {rep.classification}")

print("\nControl run: gamma = 0.45 below critical")
ctrl = sharpness_experiment(t, p=2.0, cfg=cfg, eps_grid=grid, gamma=0.45)
print(f"  increment decay {ctrl.incr_decay_slope:+.3f} -> {ctrl.classification}")

print("\nSeries (eps, product integral):")
for eps, est in zip(rep.eps_grid, rep.lhs):
    print(f"  2^-{int(round(-math.log2(eps))):<3} "
          f"{est.value:10.3f} +- {est.stderr:.3f}")
