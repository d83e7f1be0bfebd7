"""Leakage pairs reachable when no message is sent.

The encoder only shapes p(x|s); every grid conditional yields a pair
(I(S;Y1), I(S;Y2)).  Time sharing makes the region the up-set of the
lower-left convex hull.
"""
import numpy as np

from statemask.discrete.search import zero_rate_region
from statemask.io import gnuplot_text
from statemask.probcore import ChannelSpec

# receiver 1 sees the state through a BSC unless x = 1 masks it; receiver 2
# sees x through a BSC whose noise depends on the state
k1 = np.zeros((2, 2, 2))
k2 = np.zeros((2, 2, 2))
for s in range(2):
    k1[0, s] = [0.9, 0.1] if s == 0 else [0.1, 0.9]
    k1[1, s] = [0.5, 0.5]
    for x in range(2):
        flip = 0.05 if s == 0 else 0.3
        k2[x, s, x], k2[x, s, 1 - x] = 1 - flip, flip
ch = ChannelSpec.from_marginal_kernels([0.5, 0.5], k1, k2, cost=[0.0, 1.0], cost_budget=0.6)

f = zero_rate_region(ch, steps=32)
e = f.as_array()[:, 3:]
print(f"{len(f)} Pareto points, {len(f.hull)} on the convex hull")
for i in f.hull:
    print("  hull vertex (E1, E2) = (%.4f, %.4f)" % tuple(e[i]))
mid = len(e) // 2
print("point", mid, "is matched by time sharing", f.hull_weights[mid])
print("\ngnuplot data (first lines):")
print("\n".join(gnuplot_text(("e1", "e2"), e).splitlines()[:4]))
