"""Inner, outer and eliminated bounds for one auxiliary conditional.

Prints the inequalities left after eliminating the binning rates, then
compares them with the directly evaluated inner-bound expressions.  The
R0+R1 row differs from the direct form by I(U;V|W,S).
"""
import numpy as np

from statemask.discrete.bounds import (binning_budget, binning_region, inner_bounds,
                                       outer_bounds, projected_inequalities)
from statemask.probcore import ChannelSpec, assemble_joint

# X = (w, u, v) as three bits; receiver 1 reads it cleanly, receiver 2
# through a symbol-erasing channel that is noisier when s = 1
card_x = 8
kernel = np.zeros((card_x, 2, card_x, card_x + 1))
for x in range(card_x):
    for s in range(2):
        kernel[x, s, x, x] = 0.9 if s == 0 else 0.6
        kernel[x, s, x, card_x] = 0.1 if s == 0 else 0.4
ch = ChannelSpec([0.5, 0.5], kernel, np.zeros(card_x))

# W, U uniform; V copies U with probability 0.8 (so I(U;V|W,S) > 0); the
# state nudges W a little, which the covering step has to pay for
cond = np.zeros((2, 2, 2, 2, card_x))
for s in range(2):
    for w in range(2):
        pw = 0.6 if w == s else 0.4
        for u in range(2):
            for v in range(2):
                cond[s, w, u, v, 4 * w + 2 * u + v] = pw * 0.5 * (0.8 if u == v else 0.2)
joint = assemble_joint(ch, cond)

print("Region after eliminating the binning rates:")
for row in projected_inequalities():
    print("   ", row)

inner, outer, reg = inner_bounds(joint), outer_bounds(joint), binning_region(joint)
print("\nbinning budget:", binning_budget(joint))
print("inner (direct):", inner)
print("outer:         ", outer)
print("\nR0 facet     %.6f   direct %.6f" % (reg.facet_rhs((1, 0, 0)), inner.b_r0))
print("R0+R1 facet  %.6f   direct %.6f   I(U;V|W,S) %.6f"
      % (reg.facet_rhs((1, 1, 0)), inner.b_r01, joint.mi("U", "V", "W,S")))
print("R0+R2 facet  %.6f   direct %.6f" % (reg.facet_rhs((1, 0, 1)), inner.b_r02))
print("sum rate: direct %.6f, from the binning constraints %.6f"
      % (inner.b_rsum, inner.b_rsum_binning))
print("\nlargest R0+R1+R2 in the region %.6f <= outer %.6f"
      % (reg.b_rsum, min(outer.c_sum1, outer.c_sum2)))
print("leakage: I(S;Y1) = %.6f <= l1 = %.6f" % (outer.m1, inner.l1))

# the direct R0+R1 and sum expressions can exceed the outer bound itself
print("\ndirect R0+R1 %.6f vs outer %.6f; direct sum %.6f vs outer %.6f"
      % (inner.b_r01, outer.c_r01, inner.b_rsum, min(outer.c_sum1, outer.c_sum2)))
