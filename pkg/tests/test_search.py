import numpy as np
import pytest

from channels import clean_channel, random_channel, xor_channel
from oracles import cmi_definition, zero_rate_oracle_binary
from statemask.discrete.frontier import dominates
from statemask.discrete.search import (SearchConfig, default_cards, search_inner_region,
                                       simplex_grid, zero_rate_region)
from statemask.probcore import (ChannelSpec, InfeasibleError, ValidationError, assemble_joint,
                                expected_cost)

SMALL = SearchConfig(seed=3, samples=8, local_iters=20)


def _xor_r1_grid_oracle(steps=16):
    """Best I(U;Y1) - I(U;S) over p(u|s) on a 1/steps grid and x = f(u, s)."""
    best = 0.0
    for i0 in range(steps + 1):
        for i1 in range(steps + 1):
            pus = [[1 - i0 / steps, i0 / steps], [1 - i1 / steps, i1 / steps]]
            for f in range(16):
                t = np.zeros((2, 2, 2))                 # (s, u, y1)
                for s in range(2):
                    for u in range(2):
                        x = (f >> (2 * s + u)) & 1
                        t[s, u, x ^ s] += 0.5 * pus[s][u]
                r = cmi_definition(t, (1,), (2,)) - cmi_definition(t, (1,), (0,))
                best = max(best, r)
    return best


XOR_R1_ORACLE = _xor_r1_grid_oracle()


def test_oracle_value():
    # dirty-paper style precoding x = u xor s reaches one bit on the grid
    assert XOR_R1_ORACLE == pytest.approx(1.0, abs=1e-12)


def test_default_cards():
    assert default_cards(xor_channel()) == (4, 4, 4)


def test_noiseless_stateless_common_rate():
    f = search_inner_region(clean_channel(), (2, 1, 1), SMALL)
    pts = f.as_array()
    hits = pts[(pts[:, 0] >= 1 - 1e-6) & (np.abs(pts[:, 3:]) <= 1e-9).all(axis=1)]
    assert len(hits) > 0


def test_empty_auxiliaries_give_zero_rate_points():
    ch = random_channel(np.random.default_rng(4))
    f = search_inner_region(ch, (1, 1, 1), SMALL)
    pts = f.as_array()
    assert np.all(pts[:, :3] == 0)
    for p, cond in zip(pts, f.provenance):
        j = assemble_joint(ch, cond)
        assert p[3] == pytest.approx(j.mi("S", "Y1"), abs=1e-12)
        assert p[4] == pytest.approx(j.mi("S", "Y2"), abs=1e-12)


def test_xor_single_user_rate_reaches_grid_oracle():
    f = search_inner_region(xor_channel(), (1, 2, 1), SMALL)
    r1 = f.as_array()[:, 1].max()
    assert r1 >= XOR_R1_ORACLE - 1e-3
    assert r1 <= 1.0 + 1e-9


def test_determinism():
    ch = xor_channel()
    a = search_inner_region(ch, (1, 2, 2), SearchConfig(seed=9, samples=3, local_iters=4))
    b = search_inner_region(ch, (1, 2, 2), SearchConfig(seed=9, samples=3, local_iters=4))
    assert np.array_equal(a.as_array(), b.as_array())
    assert all(np.array_equal(x, y) for x, y in zip(a.provenance, b.provenance))


def test_frontier_is_non_dominated():
    f = search_inner_region(xor_channel(), (2, 2, 1), SearchConfig(seed=1, samples=3, local_iters=4))
    pts = f.as_array()
    for i in range(len(pts)):
        assert not any(dominates(pts[j], pts[i], tol=0.0) for j in range(len(pts)) if j != i)


def test_warm_start_monotonicity():
    ch = xor_channel()
    cfg = SearchConfig(seed=2, samples=3, local_iters=4)
    small = search_inner_region(ch, (1, 2, 1), cfg)
    big = search_inner_region(ch, (2, 2, 2), cfg, warm_start=small)
    new = big.as_array()
    for p in small.as_array():
        assert any(dominates(q, p, tol=1e-12) or np.allclose(q, p, atol=1e-12) for q in new)


def test_cost_budget_respected():
    ps = [0.5, 0.5]
    k = np.zeros((2, 2, 2))
    for x in range(2):
        k[x, :, x] = 1.0
    ch = ChannelSpec.from_marginal_kernels(ps, k, k, cost=[0.0, 1.0], cost_budget=0.2)
    f = search_inner_region(ch, (2, 1, 1), SearchConfig(seed=0, samples=4, local_iters=5))
    for cond in f.provenance:
        assert expected_cost(ch, assemble_joint(ch, cond)) <= 0.2 + 1e-9


def test_infeasible_budget():
    ch = ChannelSpec.from_marginal_kernels([1.0], np.ones((2, 1, 1)), np.ones((2, 1, 1)),
                                           cost=[1.0, 2.0], cost_budget=0.5)
    with pytest.raises(InfeasibleError):
        search_inner_region(ch, (1, 1, 1), SMALL)
    with pytest.raises(InfeasibleError):
        zero_rate_region(ch, 4)


def test_bad_cards():
    with pytest.raises(ValidationError):
        search_inner_region(xor_channel(), (0, 1, 1), SMALL)


def test_simplex_grid():
    g = simplex_grid(3, 4)
    assert g.shape == (15, 3)
    assert np.allclose(g.sum(axis=1), 1)
    assert len({tuple(r) for r in g}) == 15


class TestZeroRate:
    def test_state_ignoring_channel(self):
        f = zero_rate_region(clean_channel(), 8)
        assert f.as_array().tolist() == [[0, 0, 0, 0, 0]]

    def test_fully_revealing(self):
        ps = [0.3, 0.7]
        k = np.zeros((2, 2, 2))
        for s in range(2):
            k[:, s, s] = 1.0
        ch = ChannelSpec.from_marginal_kernels(ps, k, k)
        hs = -sum(p * np.log2(p) for p in ps)
        pts = zero_rate_region(ch, 8).as_array()
        assert pts.shape == (1, 5)
        assert pts[0, 3] == pytest.approx(hs, abs=1e-12) and pts[0, 4] == pytest.approx(hs, abs=1e-12)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_matches_exhaustive_oracle(self, seed):
        ch = xor_channel() if seed == 0 else random_channel(np.random.default_rng(seed))
        k1, k2 = ch.kernel.sum(axis=3), ch.kernel.sum(axis=2)
        ref = zero_rate_oracle_binary(ch.state_pmf, k1, k2, 32)
        got = zero_rate_region(ch, 32).as_array()[:, 3:]
        assert got.shape[0] == len(ref)
        assert np.max(np.abs(got - np.array(ref))) <= 1e-12

    def test_hull_weights_cover_every_point(self):
        ch = random_channel(np.random.default_rng(1))
        f = zero_rate_region(ch, 16)
        e = f.as_array()[:, 3:]
        for i, combo in f.hull_weights.items():
            mix = sum(w * e[j] for j, w in combo)
            assert sum(w for _, w in combo) == pytest.approx(1.0)
            assert mix[0] <= e[i, 0] + 1e-12 and mix[1] <= e[i, 1] + 1e-12

    def test_nats(self):
        ch = random_channel(np.random.default_rng(2))
        b = zero_rate_region(ch, 8).as_array()
        n = zero_rate_region(ch, 8, unit="nats").as_array()
        assert np.allclose(n, b * np.log(2), atol=1e-14)
