"""Numerical exploration of the inner region and the zero-rate region."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..probcore import (ChannelSpec, InfeasibleError, ValidationError, assemble_joint,
                        embed_conditional, expected_cost)
from .bounds import binning_region
from .frontier import (RegionFrontier, hull_time_sharing, lower_left_hull, make_frontier,
                       pareto_indices)

log = logging.getLogger(__name__)

COST_TOL = 1e-12


@dataclass(frozen=True)
class SearchConfig:
    """Random-restart search settings.

    ``samples`` Dirichlet(1) restarts, each followed by at most ``local_iters``
    sweeps of coordinate perturbation whose step halves from ``step_init``
    down to ``step_min``.
    """

    seed: int = 0
    samples: int = 32
    local_iters: int = 20
    step_init: float = 0.1
    step_min: float = 1e-4


def default_cards(ch: ChannelSpec) -> tuple:
    # heuristic: no cardinality bounds are known for these auxiliaries
    n = ch.card_x * ch.card_s
    return (n, n, n)


def _repair_cost(ch: ChannelSpec, cond: np.ndarray) -> np.ndarray:
    """Shift input mass towards the cheapest symbol until E[phi(X)] <= budget."""
    ps = ch.state_pmf
    cost_now = float(np.einsum("s,swuvx,x->", ps, cond, ch.cost))
    if cost_now <= ch.cost_budget + COST_TOL:
        return cond
    x_min = int(np.argmin(ch.cost))
    phi_min = float(ch.cost[x_min])
    t = (cost_now - ch.cost_budget) / (cost_now - phi_min)
    t = min(1.0, t * (1 + 1e-12) + 1e-15)
    cheap = np.zeros_like(cond)
    cheap[..., x_min] = cond.sum(axis=-1)
    return (1 - t) * cond + t * cheap


def _check_budget(ch: ChannelSpec) -> None:
    if float(ch.cost.min()) > ch.cost_budget + COST_TOL:
        raise InfeasibleError(
            f"cheapest input costs {ch.cost.min():g} > budget {ch.cost_budget:g}")


class _Evaluator:
    def __init__(self, ch: ChannelSpec, unit: str):
        self.ch = ch
        self.unit = unit
        ps = ch.state_pmf[ch.state_pmf > 0]
        self.penalty_floor = float(-(ps * np.log2(ps)).sum()) + 1.0

    def __call__(self, cond, lam, mu):
        joint = assemble_joint(self.ch, cond, unit=self.unit)
        reg = binning_region(joint)
        leak = np.array([reg.l1, reg.l2])
        if not reg.feasible:
            return -self.penalty_floor - reg.violation(), []
        verts = reg.max_vertices()
        score = float(np.max(verts @ lam)) - float(leak @ mu)
        pts = [tuple(v) + tuple(leak) for v in verts]
        return score, pts


def _refine(evaluate, cond, lam, mu, cfg: SearchConfig, ch: ChannelSpec, pool, prov):
    best, pts = evaluate(cond, lam, mu)
    for p in pts:
        pool.append(p)
        prov.append(cond)
    step = cfg.step_init
    sweeps = 0
    n_s = cond.shape[0]
    while step >= cfg.step_min and sweeps < cfg.local_iters:
        improved = False
        for s in range(n_s):
            flat_shape = cond[s].shape
            for c in range(cond[s].size):
                for direction in (1, -1):
                    sl = cond[s].reshape(-1).copy()
                    if direction > 0:
                        sl[c] += step
                    else:
                        if sl[c] <= 0:
                            continue
                        sl[c] -= min(step, sl[c])
                    total = sl.sum()
                    if total <= 0:
                        continue
                    trial = cond.copy()
                    trial[s] = (sl / total).reshape(flat_shape)
                    trial = _repair_cost(ch, trial)
                    score, tpts = evaluate(trial, lam, mu)
                    if score > best + 1e-15:
                        best, cond, improved = score, trial, True
                        for p in tpts:
                            pool.append(p)
                            prov.append(cond)
        sweeps += 1
        if not improved:
            step /= 2
    return cond


def search_inner_region(ch: ChannelSpec, cards: Optional[Sequence[int]] = None,
                        cfg: SearchConfig = SearchConfig(), unit: str = "bits",
                        warm_start: Optional[RegionFrontier] = None) -> RegionFrontier:
    """Inner approximation of the rate-leakage region by randomized search.

    Each restart draws P(w,u,v,x|s) from a flat Dirichlet, repairs it to the
    cost budget and refines it greedily against a random scalarization of
    (rates up, leakages down).  Every quintuple met along the way enters the
    candidate pool; the result is its Pareto frontier.

    ``warm_start`` conditionals (from a search at smaller auxiliary
    cardinalities) are embedded and evaluated first, so enlarging the
    alphabets never loses a previously found point.
    """
    cards = tuple(default_cards(ch) if cards is None else cards)
    if len(cards) != 3 or any(int(c) < 1 for c in cards):
        raise ValidationError("auxiliary cardinalities must be three integers >= 1")
    _check_budget(ch)
    cw, cu, cv = (int(c) for c in cards)
    shape = (ch.card_s, cw, cu, cv, ch.card_x)
    n_cells = cw * cu * cv * ch.card_x
    rng = np.random.default_rng(cfg.seed)
    evaluate = _Evaluator(ch, unit)
    pool: list = []
    prov: list = []

    if warm_start is not None:
        for cond in warm_start.provenance:
            if cond is None:
                continue
            emb = _repair_cost(ch, embed_conditional(cond, (cw, cu, cv)))
            _, pts = evaluate(emb, np.ones(3) / 3, np.zeros(2))
            for p in pts:
                pool.append(p)
                prov.append(emb)

    for k in range(cfg.samples):
        cond = rng.dirichlet(np.ones(n_cells), size=ch.card_s).reshape(shape)
        cond = _repair_cost(ch, cond)
        w = rng.dirichlet(np.ones(5))
        lam, mu = w[:3], w[3:]
        _refine(evaluate, cond, lam, mu, cfg, ch, pool, prov)
        log.debug("restart %d: pool size %d", k, len(pool))

    if not pool:
        return RegionFrontier(points=[], provenance=[])
    pts = np.array(pool)
    idx = pareto_indices(pts, tol=1e-12)
    frontier = make_frontier(pts[idx], [prov[i] for i in idx])
    for cond in frontier.provenance:
        assert expected_cost(ch, assemble_joint(ch, cond)) <= ch.cost_budget + 1e-9
    return frontier


def simplex_grid(dim: int, steps: int) -> np.ndarray:
    """All points of the probability simplex in R^dim with coordinates in (1/steps)Z."""
    if steps < 1:
        raise ValidationError("grid needs at least 2 points per simplex dimension")
    rows = []
    for bars in itertools.combinations(range(steps + dim - 1), dim - 1):
        prev, parts = -1, []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(steps + dim - 1 - prev - 1)
        rows.append(parts)
    return np.array(rows, dtype=float) / steps


def _state_leakage_grid(ch: ChannelSpec, steps: int):
    """(I(S;Y1), I(S;Y2)) and E[phi] for every grid conditional p(x|s)."""
    grid = simplex_grid(ch.card_x, steps)              # (g, x)
    k1 = ch.kernel.sum(axis=3)                          # (x, s, y1)
    k2 = ch.kernel.sum(axis=2)                          # (x, s, y2)
    py1 = np.einsum("gx,xsy->sgy", grid, k1)            # P(y1|s) per grid row
    py2 = np.einsum("gx,xsy->sgy", grid, k2)
    costs = grid @ ch.cost                              # E[phi|s]
    idx = np.array(list(itertools.product(range(len(grid)), repeat=ch.card_s)), dtype=int)
    ps = ch.state_pmf

    def leak(py):
        # joint[n, s, y] = P(s) P(y|s) for combination n
        joint = ps[None, :, None] * py[np.arange(ch.card_s)[None, :], idx]
        marg_y = joint.sum(axis=1, keepdims=True)
        prod = ps[None, :, None] * marg_y
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(joint > 0, joint * np.log2(joint / prod), 0.0)
        return np.clip(terms.sum(axis=(1, 2)), 0.0, None)

    e1, e2 = leak(py1), leak(py2)
    cost = (costs[idx] * ps[None, :]).sum(axis=1)
    return grid, idx, e1, e2, cost


def zero_rate_region(ch: ChannelSpec, steps: int = 32, unit: str = "bits",
                     tol: float = 1e-12) -> RegionFrontier:
    """Zero-rate leakage region: Pareto frontier of (I(S;Y1), I(S;Y2)) over p(x|s).

    Conditionals are enumerated on the simplex grid with spacing ``1/steps``
    for every state.  The achievable region is the up-set of the convex hull
    of the returned points; ``hull`` and ``hull_weights`` describe it.
    """
    if unit not in ("bits", "nats"):
        raise ValidationError(f"unknown unit {unit!r}")
    grid, idx, e1, e2, cost = _state_leakage_grid(ch, steps)
    ok = cost <= ch.cost_budget + COST_TOL
    if not ok.any():
        raise InfeasibleError("no grid input distribution meets the cost budget")
    if unit == "nats":
        e1, e2 = e1 * np.log(2), e2 * np.log(2)
    cand = np.flatnonzero(ok)
    pts = np.zeros((cand.size, 5))
    pts[:, 3], pts[:, 4] = e1[cand], e2[cand]
    keep = pareto_indices(pts, tol=tol)
    prov = []
    for i in keep:
        p_x_s = grid[idx[cand[i]]]                       # (s, x)
        cond = p_x_s[:, None, None, None, :]
        prov.append(cond)
    frontier = make_frontier(pts[keep], prov)
    e = frontier.as_array()[:, 3:]
    frontier.hull = lower_left_hull(e)
    frontier.hull_weights = hull_time_sharing(e, frontier.hull)
    return frontier
