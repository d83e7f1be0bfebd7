"""Scalar Gaussian channel with two additive states.

Sweeps the power split and the input-state correlations, then checks the
closed forms against exact covariance log-determinants.
"""
import numpy as np

from statemask.gaussian import GaussianParams, gaussian_coefficients, gaussian_rate_region, sweep_region
from statemask.gaussverify import build_covariance, gaussian_mi, sample_params, verify_gaussian_point

base = GaussianParams(p=1.0, n1=1.0, n2=2.0, q1=1.0, q2=1.0, gamma=0.5)
print("operating point", base)
print("  (R1, R2, E1, E2) =", tuple(round(v, 6) for v in gaussian_rate_region(base)))
print("  coefficients    =", tuple(round(v, 6) for v in gaussian_coefficients(base)))

for q1 in (0.0, 1.0, 10.0):
    gp = GaussianParams(1.0, 1.0, 2.0, q1, 1.0, 1.0)
    print(f"  Q1 = {q1:4}: R1 = {gaussian_rate_region(gp).r1:.6f} (state known to encoder costs nothing)")

params, values = sweep_region(base, gamma_steps=17, rho_steps=17)
print(f"\nsweep: {len(values)} non-dominated (gamma, rho1, rho2) settings")
low = values[np.argmin(values[:, 2] + values[:, 3])]
print("  least total leakage: (R1, R2, E1, E2) = (%.4f, %.4f, %.4f, %.4f)" % tuple(low))

reports = [verify_gaussian_point(gp) for gp in sample_params(np.random.default_rng(0), 50)]
print("\ncovariance check on 50 random points: max residual %.2e, all pass: %s"
      % (max(r.max_residual for r in reports), all(r.passed for r in reports)))

gp = GaussianParams(2.0, 1.0, 2.0, 1.0, 1.5, 0.6, 0.3, 0.4)
cm = build_covariance(gp)
print("I(S2;Y1|S1) at rho2 = 0.4: %.4f bits (receiver 1 also sees S2 through X)"
      % gaussian_mi(cm, "S2", "Y1", "S1"))
