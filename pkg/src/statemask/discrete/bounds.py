"""Single-letter inner/outer bounds for a fixed auxiliary joint.

``inner_bounds`` evaluates the achievable-region right-hand sides in their
direct closed form; ``binning_region`` re-derives the inner region from the
covering/packing constraints on the binning rates by Fourier-Motzkin
elimination and is the authoritative inner region.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from ..fme import fourier_motzkin
from ..probcore import AuxiliaryJoint

FEAS_TOL = 1e-9


@dataclass(frozen=True)
class InnerBoundValues:
    """Right-hand sides of the inner bound, clamped at zero.

    ``b_rsum`` is the direct sum-rate bound (with ``-min{I(W;Y1),I(W;Y2)}
    - I(W;S)``); ``b_rsum_binning`` is the sum-rate bound implied by the
    binning constraints (``-max{...} + I(W;S)``).  They generally differ.
    """

    b_r0: float
    b_r01: float
    b_r02: float
    b_rsum: float
    l1: float
    l2: float
    b_rsum_binning: float

    def tightened(self) -> "InnerBoundValues":
        """Bounds implied jointly by the set (rates are non-negative).

        The direct right-hand sides are not mutually tight: e.g. R0 is also
        limited by the R0+R1 bound once R1 >= 0.
        """
        r0 = min(self.b_r0, self.b_r01, self.b_r02, self.b_rsum)
        r01 = min(self.b_r01, self.b_rsum)
        r02 = min(self.b_r02, self.b_rsum)
        return InnerBoundValues(r0, r01, r02, self.b_rsum, self.l1, self.l2,
                                self.b_rsum_binning)


@dataclass(frozen=True)
class OuterBoundValues:
    """Right-hand sides of the outer bound and the leakage lower bounds."""

    c_r0: float
    c_r01: float
    c_r02: float
    c_sum1: float
    c_sum2: float
    m1: float
    m2: float


@dataclass(frozen=True)
class BinningBudget:
    """Minimal binning rates (covering requirements with slack taken to 0)."""

    rt0: float
    rt2: float
    rt1s: float
    rt12: float


def _pos(x: float) -> float:
    return max(x, 0.0)


def inner_bounds(joint: AuxiliaryJoint) -> InnerBoundValues:
    """Inner-bound right-hand sides for one choice of P(w,u,v,x|s)."""
    i_wy1, i_wy2 = joint.mi("W", "Y1"), joint.mi("W", "Y2")
    i_ws = joint.mi("W", "S")
    a = min(i_wy1, i_wy2) - i_ws
    b = joint.mi("W,U", "Y1") - joint.mi("W,U", "S")
    c = joint.mi("W,V", "Y2") - joint.mi("W,V", "S")
    cross = joint.mi("U", "V", "W,S")
    direct_sum = b + c - min(i_wy1, i_wy2) - i_ws - cross
    binning_sum = b + c - max(i_wy1, i_wy2) + i_ws - cross
    return InnerBoundValues(
        b_r0=_pos(a), b_r01=_pos(b), b_r02=_pos(c), b_rsum=_pos(direct_sum),
        l1=joint.mi("S", "W,U,Y1"), l2=joint.mi("S", "W,V,Y2"),
        b_rsum_binning=_pos(binning_sum),
    )


def outer_bounds(joint: AuxiliaryJoint) -> OuterBoundValues:
    """Outer-bound right-hand sides (every term conditioned on S)."""
    m = min(joint.mi("W", "Y1", "S"), joint.mi("W", "Y2", "S"))
    u1 = joint.mi("U", "Y1", "W,S")
    v2 = joint.mi("V", "Y2", "W,S")
    return OuterBoundValues(
        c_r0=m,
        c_r01=m + u1,
        c_r02=m + v2,
        c_sum1=m + u1 + joint.mi("X", "Y2", "W,U,S"),
        c_sum2=m + joint.mi("X", "Y1", "W,V,S") + v2,
        m1=joint.mi("S", "Y1"),
        m2=joint.mi("S", "Y2"),
    )


def binning_budget(joint: AuxiliaryJoint) -> BinningBudget:
    return BinningBudget(
        rt0=joint.mi("W", "S"),
        rt2=joint.mi("V", "S", "W"),
        rt1s=joint.mi("U", "S", "W"),
        rt12=joint.mi("U", "V", "S,W"),
    )


# -- Fourier-Motzkin derivation of the inner region ---------------------------

RATE_NAMES = ("R0", "R1", "R2")
BINNING_NAMES = ("Rt0", "Rt2", "Rt1s", "Rt12")

# Symbolic basis for right-hand sides: (label, (A, B, C)) meaning I(A;B|C).
TERMS = (
    ("I(W;S)", ("W", "S", "")),
    ("I(V;S|W)", ("V", "S", "W")),
    ("I(U;S|W)", ("U", "S", "W")),
    ("I(U;V|S,W)", ("U", "V", "S,W")),
    ("I(U;Y1|W)", ("U", "Y1", "W")),
    ("I(W,U;Y1)", ("W,U", "Y1", "")),
    ("I(V;Y2|W)", ("V", "Y2", "W")),
    ("I(W,V;Y2)", ("W,V", "Y2", "")),
    ("I(W;Y1)", ("W", "Y1", "")),
    ("I(W;Y2)", ("W", "Y2", "")),
)


def _constraint_system():
    """Covering and packing constraints as ``A z <= B`` over
    z = (R0, R1, R2, Rt0, Rt2, Rt1s, Rt12), B symbolic over TERMS."""
    t = {label: i for i, (label, _) in enumerate(TERMS)}
    rows = []

    def add(coeffs, rhs):
        a = np.zeros(7)
        for name, c in coeffs.items():
            a[(RATE_NAMES + BINNING_NAMES).index(name)] = c
        b = np.zeros(len(TERMS))
        for label, c in rhs.items():
            b[t[label]] = c
        rows.append((a, b))

    # encoder covering
    add({"Rt0": -1}, {"I(W;S)": -1})
    add({"Rt2": -1}, {"I(V;S|W)": -1})
    add({"Rt1s": -1}, {"I(U;S|W)": -1})
    add({"Rt12": -1}, {"I(U;V|S,W)": -1})
    # decoder 1 packing
    add({"R1": 1, "Rt1s": 1, "Rt12": 1}, {"I(U;Y1|W)": 1})
    add({"R0": 1, "Rt0": 1, "R1": 1, "Rt1s": 1, "Rt12": 1}, {"I(W,U;Y1)": 1})
    # decoder 2 packing
    add({"R2": 1, "Rt2": 1}, {"I(V;Y2|W)": 1})
    add({"R0": 1, "Rt0": 1, "R2": 1, "Rt2": 1}, {"I(W,V;Y2)": 1})
    # cloud-centre decodability at both receivers
    add({"R0": 1, "Rt0": 1}, {"I(W;Y1)": 1})
    add({"R0": 1, "Rt0": 1}, {"I(W;Y2)": 1})
    # rates are non-negative
    for r in RATE_NAMES:
        add({r: -1}, {})
    A = np.array([a for a, _ in rows])
    B = np.array([b for _, b in rows])
    return A, B


@lru_cache(maxsize=1)
def projected_system():
    """The (R0, R1, R2) projection: rows ``A r <= B @ term_values``.

    Also returns, for every triple of rows with a nonsingular coefficient
    block, the index triple and the block inverse (used for vertex
    enumeration).
    """
    A, B = _constraint_system()
    A3, B3 = fourier_motzkin(A, B, eliminate_cols=[3, 4, 5, 6])
    triples, inverses = [], []
    for tri in combinations(range(A3.shape[0]), 3):
        M = A3[list(tri)]
        if abs(np.linalg.det(M)) > 1e-12:
            triples.append(tri)
            inverses.append(np.linalg.inv(M))
    return A3, B3, np.array(triples, dtype=int), np.array(inverses)


def term_values(joint: AuxiliaryJoint) -> np.ndarray:
    return np.array([joint.mi(a, b, c) for _, (a, b, c) in TERMS])


def _format_rhs(coeffs) -> str:
    parts = []
    for c, (label, _) in zip(coeffs, TERMS):
        if abs(c) < 1e-15:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(abs(c) - 1) < 1e-15 else f"{abs(c):g}*"
        parts.append(f"{sign} {mag}{label}")
    if not parts:
        return "0"
    parts.sort(key=lambda t: t.startswith("-"))
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else s


def projected_inequalities() -> list[str]:
    """Human-readable form of the eliminated system."""
    A3, B3, _, _ = projected_system()
    out = []
    for a, b in zip(A3, B3):
        lhs = " + ".join(
            (f"{c:g}*" if abs(c - 1) > 1e-15 else "") + n
            for c, n in zip(a, RATE_NAMES) if abs(c) > 1e-15)
        lhs = lhs.replace("+ -1*", "- ").replace("-1*", "-")
        out.append(f"{lhs} <= {_format_rhs(b)}")
    return out


@dataclass(frozen=True)
class BinningRegion:
    """Rate region {r >= 0 : A r <= rhs} for one joint, with leakage guarantees.

    ``b_r0``, ``b_r01``, ``b_r02``, ``b_rsum`` are support values of the
    region (largest R0, R0+R1, R0+R2, R0+R1+R2 it contains), or 0 when the
    region is empty.  ``facet_rhs`` gives the raw eliminated inequalities.
    """

    A: np.ndarray
    rhs: np.ndarray
    terms: np.ndarray
    l1: float
    l2: float
    vertices: np.ndarray

    @property
    def feasible(self) -> bool:
        return self.vertices.shape[0] > 0

    def violation(self) -> float:
        """Total constraint violation at the origin (0 iff region non-empty)."""
        return float(np.clip(-self.rhs, 0, None).sum())

    def support(self, direction) -> float:
        if not self.feasible:
            return 0.0
        return float(np.max(self.vertices @ np.asarray(direction, dtype=float)))

    def facet_rhs(self, pattern) -> float:
        """Tightest right-hand side among rows with exactly this coefficient pattern."""
        pattern = np.asarray(pattern, dtype=float)
        hits = np.all(np.abs(self.A - pattern) < 1e-12, axis=1)
        if not hits.any():
            raise KeyError(f"no eliminated inequality with coefficients {tuple(pattern)}")
        return float(self.rhs[hits].min())

    @property
    def per_rate(self) -> tuple:
        """Individual bounds on (R0, R1, R2) from the eliminated rows."""
        return tuple(self.facet_rhs(e) for e in np.eye(3))

    @property
    def b_r0(self) -> float:
        return self.support((1, 0, 0))

    @property
    def b_r01(self) -> float:
        return self.support((1, 1, 0))

    @property
    def b_r02(self) -> float:
        return self.support((1, 0, 1))

    @property
    def b_rsum(self) -> float:
        return self.support((1, 1, 1))

    def max_vertices(self) -> np.ndarray:
        """Vertices not dominated (componentwise) by another vertex."""
        v = self.vertices
        if v.shape[0] <= 1:
            return v
        ge = np.all(v[None, :, :] >= v[:, None, :] - FEAS_TOL, axis=2)
        gt = np.any(v[None, :, :] > v[:, None, :] + FEAS_TOL, axis=2)
        dominated = np.any(ge & gt, axis=1)
        keep = v[~dominated]
        out = [keep[0]]
        for row in keep[1:]:
            if not any(np.all(np.abs(row - o) <= FEAS_TOL) for o in out):
                out.append(row)
        return np.array(out)


def _vertices(A, rhs, triples, inverses) -> np.ndarray:
    if np.any(rhs < -FEAS_TOL):
        # region sits in the non-negative orthant with non-negative row
        # coefficients apart from r >= 0, so infeasible at 0 means empty
        return np.zeros((0, 3))
    pts = np.einsum("kij,kj->ki", inverses, rhs[triples])
    ok = np.all(pts @ A.T <= rhs + FEAS_TOL, axis=1)
    pts = pts[ok]
    pts[np.abs(pts) < 1e-15] = 0.0
    return pts


def binning_region(joint: AuxiliaryJoint) -> BinningRegion:
    """Eliminate the binning rates and evaluate the region on ``joint``."""
    A3, B3, triples, inverses = projected_system()
    terms = term_values(joint)
    rhs = B3 @ terms
    verts = _vertices(A3, rhs, triples, inverses)
    return BinningRegion(
        A=A3, rhs=rhs, terms=terms,
        l1=joint.mi("S", "W,U,Y1"), l2=joint.mi("S", "W,V,Y2"),
        vertices=verts,
    )
