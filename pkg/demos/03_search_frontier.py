"""Randomized search for the inner region of the XOR broadcast channel.

Receiver 1 sees X xor S, receiver 2 sees X.  Receiver 1 can get a full bit
through precoding against the state, at the price of revealing it to
receiver 2.
"""
import numpy as np

from statemask.discrete.frontier import Verdict, check_point
from statemask.discrete.search import SearchConfig, search_inner_region
from statemask.io import frontier_csv_text
from statemask.probcore import ChannelSpec

k1 = np.zeros((2, 2, 2))
k2 = np.zeros((2, 2, 2))
for x in range(2):
    for s in range(2):
        k1[x, s, x ^ s] = 1.0
        k2[x, s, x] = 1.0
ch = ChannelSpec.from_marginal_kernels([0.5, 0.5], k1, k2)

cfg = SearchConfig(seed=0, samples=6, local_iters=10)
small = search_inner_region(ch, (1, 2, 1), cfg)
big = search_inner_region(ch, (2, 2, 2), cfg, warm_start=small)
print(f"{len(small)} points with |W|,|U|,|V| = 1,2,1; {len(big)} points with 2,2,2")

pts = big.as_array()
best = pts[np.argmax(pts[:, 1])]
print("largest private rate to receiver 1: r1 = %.4f with leakages (%.4f, %.4f)"
      % (best[1], best[3], best[4]))

print("\nfirst rows of the frontier CSV:")
print("\n".join(frontier_csv_text(big).splitlines()[:6]))

for q in [(0, 0.5, 0, 1.0, 1.0), (0, 1.2, 0, 1.0, 1.0)]:
    v = check_point(big, q)
    print(q, "->", v.value)
    assert v in (Verdict.INSIDE, Verdict.OUTSIDE_OF_FOUND)
