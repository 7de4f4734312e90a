#!/usr/bin/env python3
"""Monte Carlo verification of the product inequality on the sphere.

For functions respecting the three one-block symmetries on S^2, the
integral of the product is bounded by the product of L^2 norms, although
plain Holder would demand L^3.  The check runs both sides on one seeded
sample stream and accepts at 3 sigma.
"""

from spherebl import (
    BalancedType,
    QuadConfig,
    enumerate_symmetries,
    holder_verify,
    random_block_invariant,
)

cfg = QuadConfig(samples=200_000, seed=12, shards=4)

for n, lengths, p in [(3, (2,), 2.0), (4, (2, 2), 4.0), (5, (3, 2), 6.0)]:
    fams = enumerate_symmetries(BalancedType(n, lengths))
    print(f"n={n}, lengths {lengths}: {len(fams)} functions at p = {p}")
    for trial in range(3):
        fs = [random_block_invariant(s, seed=100 * trial + j)
              for j, s in enumerate(fams)]
        rec = holder_verify(fams, fs, [p] * len(fams), cfg)
        print(f"  trial {trial}: LHS = {rec.lhs.value:.5f}  "
              f"RHS = {rec.rhs_value:.5f}  margin = {rec.margin:+.5f}  "
              f"pass = {rec.passed}")
