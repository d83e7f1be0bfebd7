"""Scalar Gaussian broadcast channel with additive states: closed-form region.

Y_k = X + S_k + Z_k with Z_k ~ N(0, N_k), S_k ~ N(0, Q_k) known to the
encoder, E[X^2] <= P.  An operating point is fixed by the power split gamma
and the input-state correlations (rho1, rho2), rho1^2 + rho2^2 <= 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .discrete.frontier import pareto_indices
from .probcore import ValidationError

RHO_TOL = 1e-12


@dataclass(frozen=True)
class GaussianParams:
    """Channel and operating-point parameters.

    ``gamma`` is the share of the uncorrelated power P' given to receiver 1's
    message, whichever receiver is the stronger one.
    """

    p: float
    n1: float
    n2: float
    q1: float
    q2: float
    gamma: float
    rho1: float = 0.0
    rho2: float = 0.0

    def __post_init__(self):
        if not self.p > 0:
            raise ValidationError("input power P must be positive")
        if not (self.n1 > 0 and self.n2 > 0):
            raise ValidationError("noise variances must be positive")
        if self.q1 < 0 or self.q2 < 0:
            raise ValidationError("state variances must be non-negative")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValidationError("gamma must lie in [0, 1]")
        if self.rho1 ** 2 + self.rho2 ** 2 > 1 + RHO_TOL:
            raise ValidationError("rho1^2 + rho2^2 must not exceed 1")
        for k, (q, rho) in enumerate(((self.q1, self.rho1), (self.q2, self.rho2)), 1):
            if q == 0 and rho != 0:
                raise ValidationError(f"rho{k} is undefined when Q{k} = 0")

    @property
    def p_prime(self) -> float:
        """Power left after the state-correlated part, clamped at 0."""
        return max((1.0 - self.rho1 ** 2 - self.rho2 ** 2) * self.p, 0.0)

    @property
    def swapped(self) -> bool:
        return self.n2 < self.n1

    def canonical(self) -> "GaussianParams":
        """Relabel receivers so that receiver 1 has the smaller noise."""
        if not self.swapped:
            return self
        return GaussianParams(self.p, self.n2, self.n1, self.q2, self.q1,
                              1.0 - self.gamma, self.rho2, self.rho1)


class GaussianQuadruple(NamedTuple):
    r1: float
    r2: float
    e1: float
    e2: float


class GaussianCoefficients(NamedTuple):
    beta1: float
    beta2: float
    alpha10: float
    alpha11: float
    alpha12: float
    alpha21: float
    alpha22: float


def _half_log2(x: float) -> float:
    return 0.5 * math.log2(x)


def _region_canonical(gp: GaussianParams) -> GaussianQuadruple:
    pp = gp.p_prime
    g = gp.gamma
    r1 = _half_log2(1 + g * pp / gp.n1)
    r2 = _half_log2(1 + (1 - g) * pp / (g * pp + gp.n2))

    def leak(rho, q, n):
        num = gp.p + 2 * rho * math.sqrt(gp.p * q) + q + n
        return max(_half_log2(num / (pp + n)), 0.0)

    return GaussianQuadruple(r1, r2, leak(gp.rho1, gp.q1, gp.n1), leak(gp.rho2, gp.q2, gp.n2))


def gaussian_rate_region(gp: GaussianParams) -> GaussianQuadruple:
    """Corner (R1, R2, E1, E2) of the rate-leakage region at ``gp`` (bits)."""
    out = _region_canonical(gp.canonical())
    if gp.swapped:
        out = GaussianQuadruple(out.r2, out.r1, out.e2, out.e1)
    return out


def coefficients_canonical(gp: GaussianParams) -> GaussianCoefficients:
    """Auxiliary coefficients for parameters already in canonical labelling."""
    p, pp, g = gp.p, gp.p_prime, gp.gamma
    b1 = gp.rho1 * math.sqrt(p / gp.q1) if gp.q1 > 0 else 0.0
    b2 = gp.rho2 * math.sqrt(p / gp.q2) if gp.q2 > 0 else 0.0
    a1 = g * pp / (g * pp + gp.n1)
    a2 = (1 - g) * pp / (pp + gp.n2)
    return GaussianCoefficients(b1, b2, a1, (1 + b1) * a1, b2 * a1, b1 * a2, (1 + b2) * a2)


def gaussian_coefficients(gp: GaussianParams) -> GaussianCoefficients:
    """beta/alpha coefficients of the dirty-paper auxiliaries.

    Computed in the canonical labelling (receiver 1 the stronger); for swapped
    inputs the coefficients refer to the relabelled channel.
    """
    return coefficients_canonical(gp.canonical())


def sweep_region(gp_base: GaussianParams, gamma_steps: int = 33, rho_steps: int = 33):
    """Non-dominated operating points over a (gamma, rho1, rho2) grid.

    gamma runs over ``linspace(0, 1, gamma_steps)`` and each rho over
    ``linspace(-1, 1, rho_steps)``; points outside the unit disk are skipped,
    and rho_k is pinned to 0 when Q_k = 0.  A grid size of 1 keeps the base
    value.  Returns ``(params, values)``: arrays of shape (n, 3) holding
    (gamma, rho1, rho2) and (n, 4) holding (r1, r2, e1, e2), in lexicographic
    order of the values.
    """
    if gamma_steps < 1 or rho_steps < 1:
        raise ValidationError("grid sizes must be positive")
    gammas = np.linspace(0, 1, gamma_steps) if gamma_steps > 1 else np.array([gp_base.gamma])
    if rho_steps > 1:
        rhos1 = np.linspace(-1, 1, rho_steps) if gp_base.q1 > 0 else np.array([0.0])
        rhos2 = np.linspace(-1, 1, rho_steps) if gp_base.q2 > 0 else np.array([0.0])
    else:
        rhos1, rhos2 = np.array([gp_base.rho1]), np.array([gp_base.rho2])
    params, values = [], []
    for g in gammas:
        for r1 in rhos1:
            for r2 in rhos2:
                if r1 * r1 + r2 * r2 > 1 + RHO_TOL:
                    continue
                gp = replace(gp_base, gamma=float(g), rho1=float(r1), rho2=float(r2))
                params.append((g, r1, r2))
                values.append(tuple(gaussian_rate_region(gp)))
    params = np.array(params, dtype=float).reshape(-1, 3)
    values = np.array(values, dtype=float).reshape(-1, 4)
    keep = pareto_indices(values, sense=(True, True, False, False))
    return params[keep], values[keep]
