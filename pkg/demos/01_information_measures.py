"""Entropy and mutual information on small tables.

A binary symmetric channel, the XOR example where conditioning creates
dependence, and the seven-variable joint assembled from a channel and an
auxiliary conditional.
"""
import numpy as np

from statemask.probcore import (ChannelSpec, assemble_joint, conditional_mi, entropy,
                                mutual_information)

print("H(0.25, 0.75) =", round(entropy([0.25, 0.75]), 6), "bits")

eps = 0.11
bsc = 0.5 * np.array([[1 - eps, eps], [eps, 1 - eps]])
print("I(X;Y) over BSC(0.11), uniform input =", round(mutual_information(bsc), 6), "bits")

# A = B xor C: A is independent of B, yet fully determined once C is known
t = np.zeros((2, 2, 2))
for b in range(2):
    for c in range(2):
        t[b ^ c, b, c] = 0.25
print("I(A;B) =", mutual_information(t.sum(axis=2)), " I(A;B|C) =", conditional_mi(t))

# Y1 = X xor S, Y2 = X with a uniform binary state
k1 = np.zeros((2, 2, 2))
k2 = np.zeros((2, 2, 2))
for x in range(2):
    for s in range(2):
        k1[x, s, x ^ s] = 1.0
        k2[x, s, x] = 1.0
ch = ChannelSpec.from_marginal_kernels([0.5, 0.5], k1, k2)

# dirty-paper style precoding: U uniform, independent of S, and X = U xor S
cond = np.zeros((2, 1, 2, 1, 2))
for s in range(2):
    for u in range(2):
        cond[s, 0, u, 0, u ^ s] = 0.5
joint = assemble_joint(ch, cond)
print("with X = U xor S:  I(U;Y1) =", joint.mi("U", "Y1"), " I(U;S) =", joint.mi("U", "S"),
      " I(S;Y2) =", joint.mi("S", "Y2"))
