"""Covariance-based check of the Gaussian closed forms.

Every variable of the dirty-paper scheme is a linear map of six independent
primitives (X'1, X'2, S1, S2, Z1, Z2); mutual informations are evaluated
exactly from log-determinants of the propagated covariance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .gaussian import (GaussianCoefficients, GaussianParams, coefficients_canonical,
                       gaussian_rate_region)
from .probcore import NumericalError, ValidationError

PRIMITIVES = ("X1p", "X2p", "S1", "S2", "Z1", "Z2")
DERIVED = ("X", "U", "V", "Y1", "Y2")
NAMES = PRIMITIVES + DERIVED
INDEX = {n: i for i, n in enumerate(NAMES)}

JITTER = 1e-12
ZERO_VAR = 1e-14
PASS_TOL = 1e-9


@dataclass(frozen=True)
class CovarianceModel:
    """Diagonal primitive covariance pushed through linear maps.

    ``lin_maps`` has one row per variable in ``NAMES`` (identity rows for the
    primitives); ``full_cov = lin_maps @ diag(prim_var) @ lin_maps.T``.
    """

    prim_var: np.ndarray
    lin_maps: np.ndarray
    full_cov: np.ndarray = field(repr=False)

    def var(self, name: str) -> float:
        i = INDEX[name]
        return float(self.full_cov[i, i])

    def cov(self, a: str, b: str) -> float:
        return float(self.full_cov[INDEX[a], INDEX[b]])


def build_covariance(gp: GaussianParams, co: GaussianCoefficients | None = None) -> CovarianceModel:
    """Assemble the joint covariance for canonical parameters ``gp``.

    ``gp`` is canonicalized first (receiver 1 the less noisy one); pass
    coefficients only to test non-default auxiliary choices.
    """
    gp = gp.canonical()
    if co is None:
        co = coefficients_canonical(gp)
    pp = (1.0 - gp.rho1 ** 2 - gp.rho2 ** 2) * gp.p
    if pp < -1e-12 * gp.p:
        raise ValidationError(f"P' = {pp:.3e} is negative")
    pp = max(pp, 0.0)
    prim_var = np.array([gp.gamma * pp, (1 - gp.gamma) * pp, gp.q1, gp.q2, gp.n1, gp.n2])
    if np.any(prim_var < 0):
        raise ValidationError("negative primitive variance")
    L = np.zeros((len(NAMES), len(PRIMITIVES)))
    L[:6] = np.eye(6)
    x = np.array([1.0, 1.0, co.beta1, co.beta2, 0.0, 0.0])
    L[INDEX["X"]] = x
    L[INDEX["U"]] = [1.0, co.alpha10, co.alpha11, co.alpha12, 0.0, 0.0]
    L[INDEX["V"]] = [0.0, 1.0, co.alpha21, co.alpha22, 0.0, 0.0]
    L[INDEX["Y1"]] = x + L[INDEX["S1"]] + L[INDEX["Z1"]]
    L[INDEX["Y2"]] = x + L[INDEX["S2"]] + L[INDEX["Z2"]]
    cov = L @ np.diag(prim_var) @ L.T
    cov = 0.5 * (cov + cov.T)
    return CovarianceModel(prim_var=prim_var, lin_maps=L, full_cov=cov)


def _indices(group) -> list[int]:
    if isinstance(group, str):
        group = [g.strip() for g in group.split(",") if g.strip()]
    out = []
    for g in group:
        if g not in INDEX:
            raise ValidationError(f"unknown Gaussian variable {g!r}")
        out.append(INDEX[g])
    return out


def _logdet(cm: CovarianceModel, idx: Sequence[int]) -> float:
    """log2 det of the covariance block, dropping zero-variance coordinates.

    A variable with zero variance is a constant and carries no information.
    If the remaining block is singular, a jitter of 1e-12 on the diagonal
    is tried before giving up.
    """
    idx = list(idx)
    if not idx:
        return 0.0
    block = cm.full_cov[np.ix_(idx, idx)]
    scale = max(float(np.max(np.diag(block))), 1.0)
    live = np.diag(block) > ZERO_VAR * scale
    block = block[np.ix_(live, live)]
    if block.size == 0:
        return 0.0
    eig = np.linalg.eigvalsh(block)
    if eig[0] < -1e-9 * scale:
        raise NumericalError(f"covariance block is indefinite (min eigenvalue {eig[0]:.3e})")
    try:
        chol = np.linalg.cholesky(block)
    except np.linalg.LinAlgError:
        try:
            chol = np.linalg.cholesky(block + JITTER * np.eye(block.shape[0]))
        except np.linalg.LinAlgError as exc:
            raise NumericalError("covariance block is not positive definite") from exc
    return 2.0 * float(np.sum(np.log2(np.diag(chol))))


def gaussian_mi(cm: CovarianceModel, a, b, c=()) -> float:
    """I(A;B|C) in bits for jointly Gaussian groups of variables.

    ``0.5 * log2(det S_AC * det S_BC / (det S_C * det S_ABC))``.
    """
    ia, ib, ic = _indices(a), _indices(b), _indices(c)
    if set(ia) & set(ib) or set(ia) & set(ic) or set(ib) & set(ic):
        raise ValidationError("variable groups must be disjoint")
    value = 0.5 * (_logdet(cm, ia + ic) + _logdet(cm, ib + ic)
                   - _logdet(cm, ic) - _logdet(cm, ia + ib + ic))
    if value < -PASS_TOL:
        raise NumericalError(f"Gaussian MI came out negative ({value:.3e})")
    return max(value, 0.0)


def gaussian_entropy(cm: CovarianceModel, a) -> float:
    """Differential entropy h(A) in bits (zero-variance coordinates dropped)."""
    ia = _indices(a)
    block = cm.full_cov[np.ix_(ia, ia)]
    k = int(np.sum(np.diag(block) > ZERO_VAR * max(float(np.max(np.diag(block))), 1.0)))
    return 0.5 * (k * math.log2(2 * math.pi * math.e) + _logdet(cm, ia))


@dataclass(frozen=True)
class VerificationReport:
    """Closed forms against covariance values; residuals are absolute, in bits."""

    params: GaussianParams
    closed_form: tuple
    r1_cov: float
    r2_cov: float
    e1_cov: float
    e2_cov: float
    mask1: float
    mask2: float
    var_x: float

    @property
    def residuals(self) -> dict:
        r1, r2, e1, e2 = self.closed_form
        return {
            "r1": abs(r1 - self.r1_cov),
            "r2": abs(r2 - self.r2_cov),
            "e1": abs(e1 - self.e1_cov),
            "e2": abs(e2 - self.e2_cov),
            "mask1": self.mask1,
            "mask2": self.mask2,
        }

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())

    @property
    def passed(self) -> bool:
        return self.max_residual <= PASS_TOL and abs(self.var_x - self.params.p) <= PASS_TOL * max(1.0, self.params.p)


def verify_gaussian_point(gp: GaussianParams) -> VerificationReport:
    """Recompute rates, leakages and the masking identities from covariances.

    Checks, in the canonical labelling: I(U;Y1) - I(U;V,S) against R1,
    I(V;Y2) - I(V;S) against R2, I(S;Yk) against Ek, and that I(S;U|Y1) and
    I(S;V|Y2) vanish.  Results are mapped back to the caller's labels.
    """
    cm = build_covariance(gp)
    s = "S1,S2"
    r1 = gaussian_mi(cm, "U", "Y1") - gaussian_mi(cm, "U", "V,S1,S2")
    r2 = gaussian_mi(cm, "V", "Y2") - gaussian_mi(cm, "V", s)
    e1 = gaussian_mi(cm, s, "Y1")
    e2 = gaussian_mi(cm, s, "Y2")
    m1 = gaussian_mi(cm, s, "U", "Y1")
    m2 = gaussian_mi(cm, s, "V", "Y2")
    if gp.swapped:
        r1, r2, e1, e2, m1, m2 = r2, r1, e2, e1, m2, m1
    return VerificationReport(
        params=gp, closed_form=tuple(gaussian_rate_region(gp)),
        r1_cov=r1, r2_cov=r2, e1_cov=e1, e2_cov=e2, mask1=m1, mask2=m2,
        var_x=cm.var("X"),
    )


def sample_params(rng: np.random.Generator, n: int) -> list[GaussianParams]:
    """Random valid parameter sets: P in [0.1, 10], N1 < N2 in [0.1, 5],
    Q in [0, 5], gamma in [0, 1], (rho1, rho2) uniform on the unit disk."""
    out = []
    for _ in range(n):
        p = rng.uniform(0.1, 10)
        n1, n2 = np.sort(rng.uniform(0.1, 5, size=2))
        q1, q2 = rng.uniform(0, 5, size=2)
        g = rng.uniform(0, 1)
        rad, ang = math.sqrt(rng.uniform()), rng.uniform(0, 2 * math.pi)
        out.append(GaussianParams(p, float(n1), float(n2), float(q1), float(q2), g,
                                  rad * math.cos(ang), rad * math.sin(ang)))
    return out
