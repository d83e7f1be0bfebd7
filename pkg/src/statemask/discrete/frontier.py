"""Rate-leakage points, Pareto filtering and membership checks."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy.optimize import linprog

from ..probcore import ValidationError


class RateQuintuple(NamedTuple):
    """(R0, R1, R2, E1, E2): rates in bits/use, leakage thresholds in bits/use."""

    r0: float
    r1: float
    r2: float
    e1: float
    e2: float


# rates are maximized, leakages minimized
QUINTUPLE_SENSE = (True, True, True, False, False)


def dominates(p, q, sense=QUINTUPLE_SENSE, tol: float = 0.0) -> bool:
    """True if ``p`` is at least as good as ``q`` everywhere and strictly better somewhere."""
    p, q = np.asarray(p, float), np.asarray(q, float)
    sign = np.where(sense, -1.0, 1.0)
    a, b = sign * p, sign * q
    return bool(np.all(a <= b + tol) and np.any(a < b - tol))


def pareto_indices(points, sense=QUINTUPLE_SENSE, tol: float = 0.0) -> np.ndarray:
    """Indices of non-dominated rows of ``points``.

    ``sense[j]`` is True for columns to maximize.  Rows equal within ``tol``
    are merged, keeping the lexicographically smallest.  Returned indices are
    ordered lexicographically by the row values.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise ValidationError("points must be a 2-D array")
    if pts.shape[0] == 0:
        return np.zeros(0, dtype=int)
    sign = np.where(np.asarray(sense, bool), -1.0, 1.0)
    m = pts * sign
    order = np.lexsort(m.T[::-1])
    kept: list[int] = []
    kept_m = np.empty((0, m.shape[1]))
    for i in order:
        row = m[i]
        if kept:
            weak = np.all(kept_m <= row + tol, axis=1)
            if np.any(weak):
                continue
        kept.append(i)
        kept_m = np.vstack([kept_m, row])
    kept_arr = np.array(kept)
    # sweep out kept rows beaten by a later kept row (only possible with tol > 0)
    if tol > 0 and len(kept) > 1:
        km = m[kept_arr]
        ge = np.all(km[None, :, :] <= km[:, None, :] + tol, axis=2)
        gt = np.any(km[None, :, :] < km[:, None, :] - tol, axis=2)
        beaten = np.any(ge & gt, axis=1)
        kept_arr = kept_arr[~beaten]
    return kept_arr[np.lexsort(pts[kept_arr].T[::-1])]


@dataclass
class RegionFrontier:
    """Non-dominated quintuples with the auxiliary conditional behind each one.

    ``hull`` lists indices of points that are vertices of the lower-left
    convex hull in the (E1, E2) plane (zero-rate frontiers only);
    ``hull_weights[i]`` is a time-sharing combination ``[(j, w), ...]`` of
    hull vertices whose leakage pair is no worse than point ``i``'s.
    """

    points: list
    provenance: list = field(default_factory=list)
    hull: Optional[list] = None
    hull_weights: Optional[dict] = None

    def __len__(self):
        return len(self.points)

    def as_array(self) -> np.ndarray:
        return np.array([tuple(p) for p in self.points], dtype=float).reshape(-1, 5)


def make_frontier(points, provenance=None, tol: float = 0.0) -> RegionFrontier:
    pts = np.asarray(points, dtype=float).reshape(-1, 5)
    idx = pareto_indices(pts, tol=tol)
    prov = [provenance[i] for i in idx] if provenance is not None else [None] * len(idx)
    return RegionFrontier(points=[RateQuintuple(*map(float, pts[i])) for i in idx],
                          provenance=prov)


def lower_left_hull(e: np.ndarray) -> list[int]:
    """Vertices of the lower-left convex hull of 2-D Pareto points.

    ``e`` must be sorted by the first column ascending (hence the second
    descending).  Returns indices into ``e``.
    """
    hull: list[int] = []
    for i in range(len(e)):
        while len(hull) >= 2:
            o, a = e[hull[-2]], e[hull[-1]]
            cross = (a[0] - o[0]) * (e[i][1] - o[1]) - (a[1] - o[1]) * (e[i][0] - o[0])
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(i)
    return hull


def hull_time_sharing(e: np.ndarray, hull: Sequence[int]) -> dict:
    weights = {}
    he = e[list(hull)]
    for i, (x, _) in enumerate(e):
        k = int(np.searchsorted(he[:, 0], x, side="right")) - 1
        if k >= len(hull) - 1 or he[k, 0] == x:
            weights[i] = [(int(hull[min(k, len(hull) - 1)]), 1.0)]
            continue
        t = (x - he[k, 0]) / (he[k + 1, 0] - he[k, 0])
        weights[i] = [(int(hull[k]), float(1 - t)), (int(hull[k + 1]), float(t))]
    return weights


class Verdict(str, enum.Enum):
    INSIDE = "INSIDE"
    OUTSIDE_OF_FOUND = "OUTSIDE-OF-FOUND"


def check_point(frontier: RegionFrontier, q, tol: float = 1e-9) -> Verdict:
    """Is ``q`` dominated by a time-sharing mixture of frontier points?

    OUTSIDE-OF-FOUND is not a proof of infeasibility: a searched frontier
    is only an inner approximation.
    """
    pts = frontier.as_array()
    if pts.shape[0] == 0:
        raise ValidationError("frontier is empty")
    q = np.asarray(tuple(q), dtype=float)
    if q.shape != (5,):
        raise ValidationError("query must have five components (r0, r1, r2, e1, e2)")
    # mixture rates >= q rates, mixture leakages <= q leakages
    sign = np.array([-1, -1, -1, 1, 1], dtype=float)
    A_ub = (pts * sign).T
    b_ub = q * sign + tol
    n = pts.shape[0]
    res = linprog(np.zeros(n), A_ub=A_ub, b_ub=b_ub,
                  A_eq=np.ones((1, n)), b_eq=[1.0], bounds=[(0, None)] * n,
                  method="highs")
    return Verdict.INSIDE if res.status == 0 else Verdict.OUTSIDE_OF_FOUND
