import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pantoq.contour import f0
from pantoq.oracle import derivative_tower, integrate_fde, integrate_fde_b0
from pantoq.qcore import DomainError, QContext, q_power, qpoch_inf
from pantoq.series import F, left_asymptote


def _max_err(sol, mu, ctx, every=1):
    r = sol.radii[::every]
    ref = np.array([F(mu, x * np.exp(1j * sol.angle), ctx).value for x in r])
    return float(np.max(np.abs(sol.values[::every] - ref)))


def test_matches_F_on_positive_axis(ctx5):
    sol = integrate_fde(0.7, 0.0, 10.0, 1e-3, ctx5)
    assert sol.values[0] == 1
    assert sol.samples[0] == (0.0, 1 + 0j)
    assert np.all(np.diff(sol.radii) > 0)
    assert _max_err(sol, 0.7, ctx5, every=50) <= 1e-6
    assert sol.residual_max <= 1e-6


@pytest.mark.parametrize("d", [0.7, 2.0, -1.2])
def test_matches_F_on_other_rays(ctx5, d):
    sol = integrate_fde(0.3 + 0.2j, d, 6.0, 2e-3, ctx5)
    assert _max_err(sol, 0.3 + 0.2j, ctx5, every=30) <= 1e-6


def test_fourth_order_convergence(ctx5):
    errs = [_max_err(integrate_fde(0.7, 0.0, 10.0, h, ctx5), 0.7, ctx5, every=int(0.08 / h))
            for h in (0.08, 0.04)]
    assert errs[0] / errs[1] == pytest.approx(16, abs=3)


def test_left_ray_constant(ctx5):
    # along x = -r, e^{x} y -> (alpha; q)_inf within the left-asymptote bound
    sol = integrate_fde(0.7, math.pi, 20.0, 1e-2, ctx5)
    A = qpoch_inf(q_power(0.7, ctx5), ctx5)
    for r in (5.0, 10.0, 20.0):
        _, bound = left_asymptote(0.7, -r, 1, ctx5)
        assert abs(sol(r) * math.exp(-r) - A) <= bound * math.exp(-r)


def test_b0_reproduces_f0(ctx5):
    sol = integrate_fde_b0(0.0, 5.0, 1e-3, ctx5)
    ref = np.array([f0(r, ctx5).value for r in sol.radii[::25]])
    assert np.max(np.abs(sol.values[::25] - ref)) <= 1e-6


def test_degenerate_polynomial(ctx5):
    sol = integrate_fde(-2, 0.0, 10.0, 1e-3, ctx5)
    assert _max_err(sol, -2, ctx5, every=100) <= 1e-10


def test_uniqueness_perturbation(ctx5):
    sol = integrate_fde(0.7, 0.0, 5.0, 1e-3, ctx5, y0=1 + 1e-6)
    assert abs(sol(5.0) - F(0.7, 5.0, ctx5).value) >= 1e-7


def test_interpolation_gap(ctx5):
    with pytest.raises(DomainError):
        integrate_fde(0.7, 0.0, 10.0, 1.0, ctx5)
    with pytest.raises(DomainError):
        integrate_fde(0.7, 0.0, 10.0, 0.0, ctx5)


def test_tower_examples(ctx5):
    assert derivative_tower(0.3, 1.2, 0, ctx5) == 0
    assert derivative_tower(0.3, 1.2, 4, ctx5) <= 1e-9
    with pytest.raises(DomainError):
        derivative_tower(0.3, 1.2, 9, ctx5)


@given(n=st.integers(1, 8), mu_re=st.floats(-1, 2), mu_im=st.floats(-1, 1),
       x_re=st.floats(-4, 4), x_im=st.floats(-4, 4), q=st.sampled_from([0.3, 0.5, 0.7]))
def test_tower_property(n, mu_re, mu_im, x_re, x_im, q):
    assert derivative_tower(complex(mu_re, mu_im), complex(x_re, x_im), n, QContext(q)) <= 1e-9
