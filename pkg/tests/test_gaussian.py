import math
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from statemask.gaussian import (GaussianParams, gaussian_coefficients, gaussian_rate_region,
                                sweep_region)
from statemask.probcore import ValidationError

BASE = GaussianParams(p=1.0, n1=1.0, n2=2.0, q1=1.0, q2=1.0, gamma=1.0)


def test_worked_example():
    q = gaussian_rate_region(BASE)
    assert q.r1 == pytest.approx(0.5, abs=1e-15)
    assert q.r2 == 0.0
    assert q.e1 == pytest.approx(0.5 * math.log2(1.5), abs=1e-15)
    assert q.e2 == pytest.approx(0.5 * math.log2(4 / 3), abs=1e-15)


@pytest.mark.parametrize("g", np.linspace(0, 1, 11))
def test_stateless_reduction(g):
    gp = GaussianParams(2.0, 0.5, 1.5, 0.0, 0.0, float(g))
    q = gaussian_rate_region(gp)
    assert q.e1 == 0.0 and q.e2 == 0.0
    assert q.r1 == pytest.approx(0.5 * math.log2(1 + g * 2 / 0.5), abs=1e-15)
    assert q.r2 == pytest.approx(0.5 * math.log2(1 + (1 - g) * 2 / (g * 2 + 1.5)), abs=1e-15)


def test_all_power_on_state():
    q = gaussian_rate_region(replace(BASE, gamma=0.3, rho1=0.6, rho2=0.8))
    assert q.r1 == 0.0 and q.r2 == 0.0
    assert math.isfinite(q.e1) and math.isfinite(q.e2)


def test_coefficients_exact():
    gp = GaussianParams(1.0, 1.0, 2.0, 1.0, 1.0, 0.5, 0.5, 0.5)
    # hand evaluation in rationals: P' = 1/2, beta = 1/2
    F = Fraction
    pp, g, b = F(1, 2), F(1, 2), F(1, 2)
    a1 = g * pp / (g * pp + 1)
    a2 = (1 - g) * pp / (pp + 2)
    expect = [b, b, a1, (1 + b) * a1, b * a1, b * a2, (1 + b) * a2]
    got = gaussian_coefficients(gp)
    for x, y in zip(got, expect):
        assert x == pytest.approx(float(y), abs=1e-15)


def test_costa_coefficient():
    co = gaussian_coefficients(BASE)
    assert co.alpha10 == pytest.approx(1 / 2, abs=1e-15)
    co = gaussian_coefficients(replace(BASE, gamma=0.0))
    assert co.alpha10 == co.alpha11 == co.alpha12 == 0.0


def test_zero_state_variance_coefficient():
    co = gaussian_coefficients(GaussianParams(1.0, 1.0, 2.0, 0.0, 1.0, 0.5, 0.0, 0.3))
    assert co.beta1 == 0.0


@pytest.mark.parametrize("kw", [dict(p=0.0), dict(n1=0.0), dict(q1=-1.0), dict(gamma=1.5),
                                dict(rho1=0.8, rho2=0.8), dict(q1=0.0, rho1=0.1)])
def test_validation(kw):
    with pytest.raises(ValidationError):
        replace(BASE, **kw)


def test_canonicalization_swaps_back():
    gp = GaussianParams(1.0, 2.0, 1.0, 0.5, 1.5, 0.3, 0.2, -0.4)
    mirror = GaussianParams(1.0, 1.0, 2.0, 1.5, 0.5, 0.7, -0.4, 0.2)
    a, b = gaussian_rate_region(gp), gaussian_rate_region(mirror)
    assert (a.r1, a.r2, a.e1, a.e2) == pytest.approx((b.r2, b.r1, b.e2, b.e1), abs=1e-15)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.1, 10), st.floats(0.1, 5), st.floats(0.1, 5), st.floats(0, 5),
       st.floats(0, 5), st.floats(0, 0.95), st.floats(0, 2 * math.pi))
def test_monotone_in_gamma_and_leakage_free_of_gamma(p, n1, dn, q1, q2, rad, ang):
    rho1, rho2 = rad * math.cos(ang), rad * math.sin(ang)
    if q1 == 0:
        rho1 = 0.0
    if q2 == 0:
        rho2 = 0.0
    gs = np.linspace(0, 1, 21)
    qs = [gaussian_rate_region(GaussianParams(p, n1, n1 + dn, q1, q2, float(g), rho1, rho2))
          for g in gs]
    r1 = np.array([q.r1 for q in qs])
    r2 = np.array([q.r2 for q in qs])
    if (1 - rho1 ** 2 - rho2 ** 2) * p > 1e-6:
        assert np.all(np.diff(r1) > 0) and np.all(np.diff(r2) < 0)
    assert len({q.e1 for q in qs}) == 1 and len({q.e2 for q in qs}) == 1
    assert all(min(q) >= 0 for q in qs)


def test_zero_correlation_leakage_positive():
    q = gaussian_rate_region(replace(BASE, gamma=0.5))
    assert q.e1 == pytest.approx(0.5 * math.log2(3 / 2), abs=1e-15) and q.e1 > 0


@pytest.mark.parametrize("q1", [0.0, 0.5, 1.0, 10.0])
def test_dirty_paper_invariance(q1):
    q = gaussian_rate_region(replace(BASE, q1=q1))
    assert q.r1 == pytest.approx(0.5 * math.log2(2.0), abs=1e-15)


class TestSweep:
    def test_stateless_collapses_to_gamma_curve(self):
        params, vals = sweep_region(replace(BASE, q1=0.0, q2=0.0), gamma_steps=11, rho_steps=5)
        assert np.all(params[:, 1:] == 0)
        assert np.all(vals[:, 2:] == 0)
        assert len(vals) == 11

    def test_single_point(self):
        params, vals = sweep_region(replace(BASE, gamma=0.4, rho1=0.1), 1, 1)
        assert params.tolist() == [[0.4, 0.1, 0.0]]
        assert vals.shape == (1, 4)

    def test_grid_frontier_pairwise_non_dominated(self):
        params, vals = sweep_region(BASE, 33, 33)
        sense = np.array([1, 1, -1, -1])
        s = vals * sense
        ge = np.all(s[None, :, :] >= s[:, None, :] - 1e-12, axis=2)
        gt = np.any(s[None, :, :] > s[:, None, :] + 1e-12, axis=2)
        np.fill_diagonal(ge, False)
        assert not np.any(ge & gt)
        assert np.all(params[:, 1] ** 2 + params[:, 2] ** 2 <= 1 + 1e-12)
        assert np.array_equal(np.lexsort(vals.T[::-1]), np.arange(len(vals)))

    def test_bad_grid(self):
        with pytest.raises(ValidationError):
            sweep_region(BASE, 0, 3)
