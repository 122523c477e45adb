import cmath
import math

import numpy as np
import pytest
import scipy.special as sp
from hypothesis import example, given, strategies as st

from pantoq import qcore
from pantoq.qcore import (
    DomainError, QContext, SurfacePoint, degenerate_index, gamma, loggamma,
    pochhammer, q_power, qbinomial, qpoch, qpoch_inf, theta,
)

from oracle_values import QPOCH_REF, THETA_REF

qs = st.floats(0.05, 0.95)
moduli = st.floats(-2.0, 2.0)
args = st.floats(-8.0, 8.0)


def test_context_constants():
    ctx = QContext(0.5)
    assert ctx.kappa == pytest.approx(2 * math.pi / math.log(2), rel=1e-15)
    assert ctx.q_star == pytest.approx(math.exp(-2 * math.pi * ctx.kappa), rel=1e-15)
    assert ctx.log_q_star == pytest.approx(math.log(ctx.q_star), rel=1e-14)


@pytest.mark.parametrize("q", [0.0, 1.0, -0.5, 2.0])
def test_context_rejects_bad_q(q):
    with pytest.raises(DomainError):
        QContext(q)


def test_surface_point_keeps_windings():
    p = SurfacePoint.from_complex(2.0)
    w = p.wind(1)
    assert complex(w) == pytest.approx(2.0)
    assert w.argument == pytest.approx(2 * math.pi)
    assert w.power(0.5) == pytest.approx(-math.sqrt(2))
    assert p.inverse().times(p).log == 0
    with pytest.raises(DomainError):
        SurfacePoint.from_complex(0)


def test_modular_variable_modulus():
    ctx = QContext(0.3)
    p = SurfacePoint.polar(1.7, 0.4)
    assert abs(p.star(ctx.kappa)) == pytest.approx(math.exp(ctx.kappa * 0.4), rel=1e-14)


def test_pochhammer():
    assert pochhammer(1.0, 5) == 120
    assert pochhammer(0.5, 0) == 1
    assert pochhammer(-2.0, 3) == 0


@pytest.mark.parametrize("a, q, ref", QPOCH_REF)
def test_qpoch_inf_mpmath(a, q, ref):
    ctx = QContext(q)
    assert abs(qpoch_inf(a, ctx) - ref) <= 1e-13 * abs(ref)
    r = qpoch(a, None, ctx)
    assert abs(r.value - ref) <= max(r.abs_err, 1e-13 * abs(ref))


def test_qpoch_finite():
    ctx = QContext(0.5)
    assert qpoch(0.3, 0, ctx).value == 1
    assert qpoch(2.0, 1, ctx).value == -1
    assert qpoch(0.3, 3, ctx).value == pytest.approx((1 - 0.3) * (1 - 0.15) * (1 - 0.075))
    with pytest.raises(DomainError):
        qpoch(0.3, -1, ctx)


def test_log_qpoch_inf_matches_product():
    a = np.array([0.2 + 0.1j, -0.7, 1.5j])
    out = qcore.log_qpoch_inf(a, 0.6)
    ref = [qpoch_inf(x, QContext(0.6)) for x in a]
    assert np.allclose(np.exp(out), ref, rtol=1e-13)


@given(q=qs, n=st.integers(1, 15), k=st.integers(0, 15))
def test_qbinomial_pascal(q, n, k):
    # [n, k] = [n-1, k-1] + q^k [n-1, k]
    if k > n:
        k = n
    ctx = QContext(q)
    lhs = qbinomial(n, k, ctx)
    a = qbinomial(n - 1, k - 1, ctx) if k >= 1 else 0
    b = q ** k * qbinomial(n - 1, k, ctx) if k <= n - 1 else 0
    assert lhs == pytest.approx(a + b, rel=1e-12)
    assert lhs == pytest.approx(qbinomial(n, n - k, ctx), rel=1e-14)


@pytest.mark.parametrize("q, x, ref", THETA_REF)
def test_theta_mpmath(q, x, ref):
    r = theta(x, QContext(q))
    scale = theta(abs(x), QContext(q)).value.real
    assert abs(r.value - ref) <= 1e-13 * scale


@given(q=qs, lr=moduli, a=st.floats(-3.0, 3.0))
def test_theta_functional_equation(q, lr, a):
    # x theta(qx) = theta(x)
    ctx = QContext(q)
    x = cmath.exp(complex(lr, a))
    lhs = x * theta(q * x, ctx).value
    scale = theta(abs(x), ctx).value.real
    assert abs(lhs - theta(x, ctx).value) <= 1e-12 * scale


@given(q=st.floats(0.1, 0.9), lr=st.floats(-1.5, 1.5), a=st.floats(-3.0, 3.0))
def test_theta_triple_product(q, lr, a):
    ctx = QContext(q)
    x = cmath.exp(complex(lr, a))
    scale = theta(abs(x), ctx).value.real
    assert abs(theta(x, ctx).value - qcore.theta_triple(x, ctx).value) <= 1e-12 * scale


@example(q=0.94921875, lr=0.0, a=6.0)
@given(q=qs, lr=moduli, a=args)
def test_theta_modular(q, lr, a):
    assert qcore.verify_theta_modular(SurfacePoint(lr, a), QContext(q)) <= 1e-10


@given(q=st.floats(0.02, 0.98))
def test_eta_relation(q):
    assert qcore.verify_eta(QContext(q)) <= 1e-12


def test_e_factor_solves_theta_equation():
    ctx = QContext(0.4)
    p = SurfacePoint.polar(1.3, 2.0)
    lhs = complex(p) * qcore.e_factor(p.scale(ctx.q), ctx)
    assert lhs == pytest.approx(qcore.e_factor(p, ctx), rel=1e-13)


@example(re=-2.00001, im=0.0)
@given(re=st.floats(-20, 30), im=st.floats(-40, 40))
def test_gamma_scipy(re, im):
    z = complex(re, im)
    if abs(z - round(re)) < 1e-6 and round(re) <= 0:
        return
    ref = sp.gamma(z)
    if not np.isfinite(ref) or abs(ref) < 1e-280:
        assert abs(loggamma(z).real - sp.loggamma(z).real) <= 1e-12 * max(1.0, abs(sp.loggamma(z)))
        return
    assert abs(gamma(z) - ref) <= 1e-12 * abs(ref)


def test_gamma_special_values():
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert gamma(5) == pytest.approx(24, rel=1e-15)
    with pytest.raises(DomainError):
        gamma(-2)
    out = qcore.gamma_array(np.array([1.0, 2.5, -0.5]))
    assert np.allclose(out, sp.gamma([1.0, 2.5, -0.5]), rtol=1e-14)


def test_degenerate_lattice():
    ctx = QContext(0.5)
    assert degenerate_index(-3 + 2j * ctx.kappa, ctx.kappa) == (3, 2)
    assert degenerate_index(0.3, ctx.kappa) is None
    assert q_power(-2 + 1j * ctx.kappa, ctx) == 4.0
