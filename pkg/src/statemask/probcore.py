"""Finite-alphabet probability engine.

Distributions, the seven-variable joint ``P_S P_{WUVX|S} P_{Y1Y2|XS}`` and the
entropy / mutual-information measures every bound is built from.  All tables
are dense numpy arrays; the joint uses axis order ``(s, w, u, v, x, y1, y2)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

INPUT_TOL = 1e-9
INTERNAL_TOL = 1e-12
MI_CLAMP_TOL = 1e-9

VARIABLES = ("S", "W", "U", "V", "X", "Y1", "Y2")
AXIS = {name: i for i, name in enumerate(VARIABLES)}


class ValidationError(ValueError):
    """Input table violates a probability or shape invariant."""


class InfeasibleError(ValueError):
    """No input distribution can meet the cost budget."""


class NumericalError(ArithmeticError):
    """An information measure came out negative beyond clamping tolerance."""


def _log(unit: str):
    if unit == "bits":
        return np.log2
    if unit == "nats":
        return np.log
    raise ValidationError(f"unknown unit {unit!r}; expected 'bits' or 'nats'")


def check_pmf(p, tol: float = INPUT_TOL, what: str = "pmf") -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.size == 0:
        raise ValidationError(f"{what} is empty")
    if not np.all(np.isfinite(p)):
        raise ValidationError(f"{what} has non-finite entries")
    if np.any(p < 0):
        raise ValidationError(f"{what} has a negative entry ({p.min():.3g})")
    total = p.sum()
    if abs(total - 1.0) > tol:
        raise ValidationError(f"{what} sums to {total:.12g}, not 1 (tol {tol:g})")
    return p


@dataclass(frozen=True)
class Pmf:
    """A probability mass function on ``{0, ..., alphabet_size - 1}``."""

    probs: np.ndarray

    def __post_init__(self):
        p = check_pmf(self.probs).copy()
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @property
    def alphabet_size(self) -> int:
        return self.probs.size


def _table_entropy(p: np.ndarray, unit: str) -> float:
    q = p[p > 0]
    return float(-(q * _log(unit)(q)).sum())


def entropy(p, unit: str = "bits") -> float:
    """Shannon entropy of a pmf (any shape; treated as one joint variable)."""
    if isinstance(p, Pmf):
        p = p.probs
    p = check_pmf(p)
    return max(_table_entropy(p, unit), 0.0)


def _clamp(value: float) -> float:
    if value < -MI_CLAMP_TOL:
        raise NumericalError(f"information measure {value:.3e} is negative")
    return max(value, 0.0)


def mutual_information(joint, unit: str = "bits") -> float:
    """I(A;B) = H(A) + H(B) - H(A,B) for a 2-D table ``joint[a, b]``."""
    joint = check_pmf(joint, what="joint")
    if joint.ndim != 2:
        raise ValidationError(f"expected a 2-D joint, got {joint.ndim}-D")
    h = lambda t: _table_entropy(t, unit)  # noqa: E731
    return _clamp(h(joint.sum(1)) + h(joint.sum(0)) - h(joint))


def conditional_mi(joint, unit: str = "bits") -> float:
    """I(A;B|C) for a 3-D table ``joint[a, b, c]``."""
    joint = check_pmf(joint, what="joint")
    if joint.ndim != 3:
        raise ValidationError(f"expected a 3-D joint, got {joint.ndim}-D")
    h = lambda t: _table_entropy(t, unit)  # noqa: E731
    return _clamp(h(joint.sum(1)) + h(joint.sum(0)) - h(joint.sum((0, 1))) - h(joint))


def info_axes(table: np.ndarray, a: Sequence[int], b: Sequence[int],
              c: Sequence[int] = (), unit: str = "bits") -> float:
    """I(A;B|C) where A, B, C are groups of axes of a joint table."""
    a, b, c = set(a), set(b), set(c)
    if (a & b) or (a & c) or (b & c):
        raise ValidationError("variable groups must be disjoint")
    if not a or not b:
        raise ValidationError("both variable groups must be non-empty")

    def h(keep):
        drop = tuple(i for i in range(table.ndim) if i not in keep)
        return _table_entropy(table.sum(axis=drop) if drop else table, unit)

    value = h(a | c) + h(b | c) - h(a | b | c)
    if c:
        value -= h(c)
    return _clamp(value)


@dataclass(frozen=True)
class ChannelSpec:
    """State-dependent broadcast channel with an input cost.

    ``kernel[x, s, y1, y2] = P(y1, y2 | x, s)``; ``cost[x] = phi(x)``.
    """

    state_pmf: np.ndarray
    kernel: np.ndarray
    cost: np.ndarray
    cost_budget: float = np.inf

    def __post_init__(self):
        ps = check_pmf(self.state_pmf, what="state_pmf")
        if ps.ndim != 1:
            raise ValidationError("state_pmf must be one-dimensional")
        k = np.asarray(self.kernel, dtype=float)
        if k.ndim != 4:
            raise ValidationError("kernel must have shape (card_x, card_s, card_y1, card_y2)")
        if k.shape[1] != ps.size:
            raise ValidationError(
                f"kernel has {k.shape[1]} states but state_pmf has {ps.size}")
        for x in range(k.shape[0]):
            for s in range(k.shape[1]):
                check_pmf(k[x, s], what=f"kernel row (x={x}, s={s})")
        cost = np.asarray(self.cost, dtype=float)
        if cost.shape != (k.shape[0],):
            raise ValidationError(
                f"cost table has length {cost.size}, expected card_x={k.shape[0]}")
        if np.any(cost < 0) or not np.all(np.isfinite(cost)):
            raise ValidationError("cost entries must be finite and non-negative")
        budget = float(self.cost_budget)
        if not budget >= 0:
            raise ValidationError("cost_budget must be non-negative")
        for name, arr in (("state_pmf", ps), ("kernel", k), ("cost", cost)):
            arr = arr.copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "cost_budget", budget)

    @property
    def card_s(self) -> int:
        return self.kernel.shape[1]

    @property
    def card_x(self) -> int:
        return self.kernel.shape[0]

    @property
    def card_y1(self) -> int:
        return self.kernel.shape[2]

    @property
    def card_y2(self) -> int:
        return self.kernel.shape[3]

    @classmethod
    def from_marginal_kernels(cls, state_pmf, k1, k2, cost=None, cost_budget=np.inf):
        """Channel whose outputs are conditionally independent given (x, s).

        ``k1[x, s, y1]`` and ``k2[x, s, y2]`` are the per-receiver kernels.
        """
        k1 = np.asarray(k1, dtype=float)
        k2 = np.asarray(k2, dtype=float)
        kernel = k1[:, :, :, None] * k2[:, :, None, :]
        if cost is None:
            cost = np.zeros(k1.shape[0])
        return cls(state_pmf, kernel, cost, cost_budget)


@dataclass(frozen=True)
class AuxiliaryJoint:
    """Conditional law of (W, U, V, X) given S and the assembled joint."""

    cond: np.ndarray
    full_joint: np.ndarray
    unit: str = "bits"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def card_w(self) -> int:
        return self.cond.shape[1]

    @property
    def card_u(self) -> int:
        return self.cond.shape[2]

    @property
    def card_v(self) -> int:
        return self.cond.shape[3]

    def marginal(self, names: Iterable[str]) -> np.ndarray:
        """Marginal table over the named variables, in canonical axis order."""
        keep = {AXIS[n] for n in _names(names)}
        drop = tuple(i for i in range(7) if i not in keep)
        return self.full_joint.sum(axis=drop)

    def _h(self, keep: frozenset) -> float:
        if keep not in self._cache:
            drop = tuple(i for i in range(7) if i not in keep)
            self._cache[keep] = _table_entropy(self.full_joint.sum(axis=drop), self.unit)
        return self._cache[keep]

    def entropy(self, names) -> float:
        return self._h(frozenset(AXIS[n] for n in _names(names)))

    def mi(self, a, b, given=()) -> float:
        """I(A;B|C); groups given as ``"W,U,Y1"`` strings or name sequences."""
        ia = frozenset(AXIS[n] for n in _names(a))
        ib = frozenset(AXIS[n] for n in _names(b))
        ic = frozenset(AXIS[n] for n in _names(given))
        if (ia & ib) or (ia & ic) or (ib & ic):
            raise ValidationError("variable groups must be disjoint")
        value = self._h(ia | ic) + self._h(ib | ic) - self._h(ia | ib | ic)
        if ic:
            value -= self._h(ic)
        return _clamp(value)


def _names(spec) -> tuple:
    if isinstance(spec, str):
        spec = [t.strip() for t in spec.replace(";", ",").split(",") if t.strip()]
    names = tuple(spec)
    for n in names:
        if n not in AXIS:
            raise ValidationError(f"unknown variable {n!r}; expected one of {VARIABLES}")
    return names


def assemble_joint(ch: ChannelSpec, cond, unit: str = "bits") -> AuxiliaryJoint:
    """Build P(s,w,u,v,x,y1,y2) = P_S(s) P(w,u,v,x|s) P(y1,y2|x,s).

    ``cond`` has shape ``(card_s, card_w, card_u, card_v, card_x)``.
    """
    _log(unit)
    cond = np.asarray(cond, dtype=float)
    if cond.ndim != 5:
        raise ValidationError("conditional table must have shape (S, W, U, V, X)")
    if cond.shape[0] != ch.card_s or cond.shape[4] != ch.card_x:
        raise ValidationError(
            f"conditional table shape {cond.shape} does not match channel "
            f"(card_s={ch.card_s}, card_x={ch.card_x})")
    for s in range(ch.card_s):
        check_pmf(cond[s], what=f"conditional slice s={s}")
    kernel_sx = np.transpose(ch.kernel, (1, 0, 2, 3))  # (s, x, y1, y2)
    full = (ch.state_pmf[:, None, None, None, None, None, None]
            * cond[..., None, None]
            * kernel_sx[:, None, None, None, :, :, :])
    check_pmf(full, tol=INPUT_TOL, what="assembled joint")
    cond = cond.copy()
    cond.setflags(write=False)
    full.setflags(write=False)
    return AuxiliaryJoint(cond=cond, full_joint=full, unit=unit)


def expected_cost(ch: ChannelSpec, joint: AuxiliaryJoint) -> float:
    """E[phi(X)] under the joint's input marginal."""
    px = joint.marginal("X")
    return float(px @ ch.cost)


def embed_conditional(cond, cards) -> np.ndarray:
    """Zero-pad a (S,W,U,V,X) conditional to larger auxiliary cardinalities."""
    cond = np.asarray(cond, dtype=float)
    cw, cu, cv = cards
    if cw < cond.shape[1] or cu < cond.shape[2] or cv < cond.shape[3]:
        raise ValidationError("cannot embed into smaller auxiliary alphabets")
    out = np.zeros((cond.shape[0], cw, cu, cv, cond.shape[4]))
    out[:, :cond.shape[1], :cond.shape[2], :cond.shape[3], :] = cond
    return out
