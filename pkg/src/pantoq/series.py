"""Series solutions of ``y'(x) = q^mu y(qx) - y(x)`` at the origin.

``F(mu; q, x)`` is the entire solution with ``y(0) = 1``; ``G(a; q, z)``
builds the solutions ``x^{-mu_k} G(mu_k; q, 1/x)`` at infinity.  Also
here: the Dirichlet and Jackson q-integral forms of F, its derivatives,
the Laurent series Psi and Phi, and the left half-plane asymptote.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from .qcore import (
    EPS, TWO_PI, DegenerateError, DomainError, Point, QContext, SeriesValue,
    SurfacePoint, _qpoch_inf, as_log, as_point, degenerate_index, log_qpoch_inf,
    loggamma, q_power,
)

# auto route for F: switch away from the power series when cancellation
# would cost more than this relative accuracy
_CANCELLATION_LIMIT = 1e-12


def _sum_until_small(next_term, first, rel_tol, max_terms, min_terms=0):
    """Sum ``first + t1 + t2 + ...`` where ``next_term(n, t_n)`` gives
    ``(t_{n+1}, ratio_bound)``.

    Stops after three consecutive terms below ``rel_tol*|S|`` once the
    ratio bound for the remaining terms is below 1/2.
    """
    s = first
    t = first
    absum = abs(first)
    small = 0
    n = 0
    while n < max_terms:
        t, rho = next_term(n, t)
        n += 1
        s += t
        absum += abs(t)
        if abs(t) <= rel_tol * abs(s) and rho < 0.5 and n >= min_terms:
            small += 1
            if small >= 3:
                tail = abs(t) * rho / (1.0 - rho)
                return s, tail + EPS * absum, n, True, absum
        else:
            small = 0
    return s, math.inf, n, False, absum


# ---------------------------------------------------------------------------
# F

def F_coefficients(mu: complex, n: int, ctx: QContext) -> np.ndarray:
    """Taylor coefficients ``(q^mu; q)_k / k! * (-1)^k`` for ``k <= n``."""
    alpha = q_power(mu, ctx)
    out = np.empty(n + 1, dtype=complex)
    c = 1.0 + 0j
    for k in range(n + 1):
        out[k] = c
        c *= -(1.0 - alpha * ctx.q ** k) / (k + 1)
    return out


def _F_polynomial(m: int, x: complex, ctx: QContext) -> SeriesValue:
    coef = F_coefficients(-m, m, ctx)
    v = complex(np.polyval(coef[::-1], x))
    mag = float(np.sum(np.abs(coef) * abs(x) ** np.arange(m + 1)))
    return SeriesValue(v, 4 * EPS * mag, m + 1, True)


def _F_power(mu: complex, x: complex, ctx: QContext) -> tuple[SeriesValue, float]:
    alpha = q_power(mu, ctx)
    q = ctx.q
    ax = abs(x)

    def step(n, t):
        qn = q ** n
        rho = ax * (1.0 + abs(alpha) * qn * q) / (n + 2)
        return t * (1.0 - alpha * qn) * (-x) / (n + 1), rho

    s, err, n, ok, absum = _sum_until_small(step, 1.0 + 0j, ctx.rel_tol, ctx.max_terms)
    reason = "tolerance" if ok else "max_terms"
    return SeriesValue(s, err, n + 1, ok, reason), absum


def F(mu: complex, x: complex, ctx: QContext, method: str = "auto") -> SeriesValue:
    """The entire solution ``F(mu; q, x) = sum (q^mu; q)_n / n! (-x)^n``.

    ``method`` is ``"series"``, ``"dirichlet"`` or ``"auto"``.  On the
    degenerate lattice the series terminates and is summed exactly.  In
    ``auto`` mode the power series is replaced by the Dirichlet series
    (lifted to ``Re mu <= 0`` through the contiguity relation) when its
    alternating terms would cancel catastrophically.
    """
    x = complex(x)
    deg = degenerate_index(mu, ctx.kappa)
    if deg is not None:
        return _F_polynomial(deg[0], x, ctx)
    if method == "dirichlet":
        return _F_far(mu, x, ctx)
    if method not in ("auto", "series"):
        raise ValueError(f"unknown method {method!r}")
    val, absum = _F_power(mu, x, ctx)
    if method == "series":
        return val
    lossy = EPS * absum > _CANCELLATION_LIMIT * abs(val.value) or not val.converged
    if lossy and x.real > 0:
        far = _F_far(mu, x, ctx)
        if far.abs_err < val.abs_err:
            return far
    return val


def _F_far(mu: complex, x: complex, ctx: QContext) -> SeriesValue:
    mu = complex(mu)
    # near Re mu = 0 we have |alpha| ~ 1 and the Dirichlet tail barely decays
    if mu.real >= 0.5:
        return F_dirichlet(mu, x, None, ctx)
    # F(mu, x) = (1 - alpha) sum_{j<J} alpha^j F(mu+1, q^j x) + alpha^J F(mu, q^J x)
    alpha = q_power(mu, ctx)
    J = max(1, int(math.ceil(math.log(abs(x)) / -ctx.log_q)) + 1)
    total = 0j
    err = 0.0
    aj = 1.0 + 0j
    xj = x
    for _ in range(J):
        f = F(mu + 1, xj, ctx)
        total += aj * f.value
        err += abs(aj) * f.abs_err
        aj *= alpha
        xj *= ctx.q
    total *= 1.0 - alpha
    err *= abs(1.0 - alpha)
    last = F(mu, xj, ctx)
    total += aj * last.value
    err += abs(aj) * last.abs_err
    return SeriesValue(total, err, J, True)


def F_dirichlet(mu: complex, x: complex, N: int | None, ctx: QContext) -> SeriesValue:
    """Dirichlet form ``(alpha; q)_inf sum_n alpha^n e^{-q^n x} / (q; q)_n``.

    Valid for ``Re mu > 0``.  With ``N=None`` terms are added until the
    bound on the omitted tail drops below ``rel_tol``.
    """
    mu = complex(mu)
    x = complex(x)
    if mu.real <= 0:
        raise DomainError("the Dirichlet series needs Re(mu) > 0")
    q = ctx.q
    alpha = q_power(mu, ctx)
    a_abs = abs(alpha)
    pref = _qpoch_inf(alpha, q)
    qq = _qpoch_inf(q, q).real
    limit = ctx.max_terms if N is None else int(N)
    s = 0j
    c = 1.0 + 0j  # alpha^n / (q;q)_n
    absum = 0.0
    n = 0
    tail = math.inf
    while n < limit:
        t = c * cmath.exp(-(q ** n) * x)
        s += t
        absum += abs(t)
        c *= alpha / (1.0 - q ** (n + 1))
        n += 1
        tail = (a_abs ** n / ((1.0 - a_abs) * qq)
                * math.exp((q ** n) * max(0.0, -x.real)))
        if N is None and tail <= ctx.rel_tol * abs(s) * 0.1:
            break
    value = pref * s
    err = abs(pref) * (tail + EPS * absum)
    ok = tail <= ctx.rel_tol * abs(s) or (N is None and n < limit)
    return SeriesValue(value, err, n, ok, "tolerance" if ok else "max_terms")


def F_jackson(mu: complex, x: complex, ctx: QContext, N: int | None = None) -> SeriesValue:
    """Jackson q-integral of Laplace type.

    ``(alpha;q)_inf / ((1-q)(q;q)_inf) * int_0^1 (qt;q)_inf e^{-tx} t^mu d_qt/t``
    with ``int_0^1 f d_qt = (1-q) sum f(q^n) q^n``; needs ``Re mu > 0``.
    """
    mu = complex(mu)
    x = complex(x)
    if mu.real <= 0:
        raise DomainError("the Jackson integral needs Re(mu) > 0")
    q = ctx.q
    alpha = q_power(mu, ctx)
    a_abs = abs(alpha)
    qq = _qpoch_inf(q, q).real
    if N is None:
        # |alpha|^N/((1-|alpha|)(q;q)_inf) below rel_tol, with head-room
        N = int(math.ceil(math.log(ctx.rel_tol * 1e-2 * (1 - a_abs) * qq) / math.log(a_abs)))
        N = min(max(N, 8), ctx.max_terms)
    t = q ** np.arange(N, dtype=float)
    f = np.exp(log_qpoch_inf(q * t, q) - t * x + (mu - 1.0) * np.log(t))
    jackson = (1.0 - q) * np.sum(f * t)
    value = _qpoch_inf(alpha, q) / ((1.0 - q) * qq) * jackson
    tail = a_abs ** N / ((1.0 - a_abs) * qq) * math.exp(q ** N * max(0.0, -x.real))
    err = abs(_qpoch_inf(alpha, q)) * tail + EPS * N * abs(value)
    return SeriesValue(complex(value), err, N, True)


def F_derivative(mu: complex, x: complex, k: int, ctx: QContext) -> complex:
    """``d^k/dx^k F(mu; q, x) = (-1)^k (q^mu; q)_k F(mu + k; q, x)``."""
    if k < 0:
        raise DomainError("k must be a natural number")
    alpha = q_power(mu, ctx)
    c = 1.0 + 0j
    for j in range(k):
        c *= -(1.0 - alpha * ctx.q ** j)
    if c == 0:
        return 0j
    return c * F(complex(mu) + k, x, ctx).value


def left_asymptote(mu: complex, x: complex, N: int, ctx: QContext,
                   C: float | None = None) -> tuple[complex, float]:
    """N-term exponential approximation of F for ``Re x < 0``.

    Returns ``(approx, bound)`` with
    ``approx = (alpha;q)_inf sum_{n<N} alpha^n e^{-q^n x} / (q;q)_n`` and
    ``bound = C^N exp(-q^N Re x)``.  For ``Re mu > 0`` the constant is the
    explicit Dirichlet tail constant; otherwise ``C`` must be supplied
    (the bound is ``inf`` when it is not).
    """
    mu = complex(mu)
    x = complex(x)
    if x.real >= 0:
        raise DomainError("left_asymptote needs Re(x) < 0")
    if N < 1:
        raise DomainError("N must be at least 1")
    q = ctx.q
    alpha = q_power(mu, ctx)
    pref = _qpoch_inf(alpha, q)
    s = 0j
    c = 1.0 + 0j
    for n in range(N):
        s += c * cmath.exp(-(q ** n) * x)
        c *= alpha / (1.0 - q ** (n + 1))
    approx = pref * s
    growth = math.exp(-(q ** N) * x.real)
    if C is not None:
        bound = C ** N * growth
    elif mu.real > 0 and abs(alpha) < 1:
        a_abs = abs(alpha)
        bound = abs(pref) * a_abs ** N / ((1 - a_abs) * _qpoch_inf(q, q).real) * growth
    else:
        bound = math.inf
    return approx, bound


# ---------------------------------------------------------------------------
# G

def G(a: complex, z: complex, ctx: QContext) -> SeriesValue:
    """``G(a; q, z) = sum (a)_n q^{n(n+1)/2} / (q; q)_n (-z)^n`` (entire)."""
    a = complex(a)
    z = complex(z)
    q = ctx.q
    az = abs(z)

    def step(n, t):
        qn1 = q ** (n + 1)
        rho = abs(a + n + 1) * az * qn1 * q / (1.0 - qn1 * q) + 1e-300
        return t * (a + n) * qn1 / (1.0 - qn1) * (-z), min(rho, 1.0)

    s, err, n, ok, _ = _sum_until_small(step, 1.0 + 0j, ctx.rel_tol, ctx.max_terms)
    return SeriesValue(s, err, n + 1, ok, "tolerance" if ok else "max_terms")


# ---------------------------------------------------------------------------
# Psi and Phi

def _lattice_check(u: complex, step: float, what: str):
    if step > 0 and degenerate_index(u, step) is not None:
        raise DomainError(f"{what}: Gamma pole lattice hit at u = {u}")


def _bilateral(term_log, rho_plus, rho_minus, N, rel_tol, max_terms, poly=0.0):
    """Sum ``exp(term_log(n))`` over ``|n| <= N`` (``N=None``: adaptively).

    ``rho_plus``/``rho_minus`` are the asymptotic ratios of consecutive
    terms for n -> +inf / -inf; ``poly`` the power of n that multiplies
    the geometric decay (enters the tail bound).
    """
    def tail(nn):
        out = 0.0
        for sgn, rho in ((1, rho_plus), (-1, rho_minus)):
            if rho >= 1:
                return math.inf
            edge = abs(cmath.exp(term_log(sgn * nn)))
            fudge = (1.0 + 1.0 / max(nn, 1)) ** (abs(poly) + 1)
            r = min(rho * fudge, 0.999)
            out += edge * r / (1 - r)
        return out

    if N is not None:
        n = np.arange(-N, N + 1)
        vals = np.exp(term_log(n))
        s = complex(np.sum(vals))
        tb = tail(N)
        err = tb + EPS * float(np.sum(np.abs(vals)))
        ok = tb <= rel_tol * abs(s)
        return SeriesValue(s, err, 2 * N + 1, ok, "tolerance" if ok else "max_terms")
    s = complex(np.exp(term_log(np.array([0])))[0])
    absum = abs(s)
    nn = 0
    while nn < max_terms:
        nn += 1
        pair = np.exp(term_log(np.array([nn, -nn])))
        s += complex(pair[0] + pair[1])
        absum += float(np.sum(np.abs(pair)))
        if nn >= 4:
            tb = tail(nn)
            if tb <= rel_tol * abs(s):
                return SeriesValue(s, tb + EPS * absum, 2 * nn + 1, True)
    return SeriesValue(s, math.inf, 2 * nn + 1, False, "max_terms")


def Psi(u: complex, v: float, z: Point, N: int | None = None, *,
        rel_tol: float = 1e-15, max_terms: int = 2000,
        strict: bool = True) -> SeriesValue:
    """Laurent series ``Psi(u, v, z) = sum_{n in Z} Gamma(u + 2ivn/pi) z^n``.

    Converges on ``exp(-|v|) < |z| < exp(|v|)``; the circles bounding the
    annulus are natural boundaries.  Outside the annulus a
    :class:`DomainError` is raised, unless ``strict=False``, in which
    case the N-term partial sum (default N=40) comes back flagged
    ``converged=False``.
    """
    u = complex(u)
    v = float(v)
    if v == 0:
        raise DomainError("Psi needs v != 0")
    step = 2.0 * abs(v) / math.pi
    _lattice_check(u, step, "Psi")
    lz = as_log(z)
    inside = abs(lz.real) < abs(v)
    if not inside:
        if strict:
            raise DomainError(f"|z| = {math.exp(lz.real):.6g} outside the annulus "
                              f"exp(-|v|) < |z| < exp(|v|), |v| = {abs(v):.6g}")
        n = np.arange(-(N or 40), (N or 40) + 1)
        vals = np.exp(loggamma(u + 2j * v * n / math.pi) + n * lz)
        return SeriesValue(complex(np.sum(vals)), math.inf, len(n), False, "divergent")

    def term_log(n):
        n = np.asarray(n)
        return loggamma(u + 2j * v * n / math.pi) + n * lz

    rp = math.exp(-abs(v) + lz.real)
    rm = math.exp(-abs(v) - lz.real)
    return _bilateral(term_log, rp, rm, N, rel_tol, max_terms, poly=u.real - 0.5)


def psi_partial_sums(u: complex, v: float, z: Point, n_max: int) -> np.ndarray:
    """Symmetric partial sums ``S_N`` of Psi for ``N = 0..n_max`` (any z)."""
    lz = as_log(z)
    n = np.arange(-n_max, n_max + 1)
    vals = np.exp(loggamma(complex(u) + 2j * v * n / math.pi) + n * lz)
    centre = n_max
    out = np.empty(n_max + 1, dtype=complex)
    acc = vals[centre]
    out[0] = acc
    for k in range(1, n_max + 1):
        acc = acc + vals[centre + k] + vals[centre - k]
        out[k] = acc
    return out


def psi_coefficient_slope(u: complex, v: float, n_lo: int = 20, n_hi: int = 40) -> float:
    """Least-squares slope of ``ln|Gamma(u + 2ivn/pi)|`` over ``n_lo..n_hi``.

    Stirling's formula gives ``-|v|``; coefficients decaying exactly at
    that geometric rate are what pins the natural boundary.
    """
    n = np.arange(n_lo, n_hi + 1, dtype=float)
    y = loggamma(complex(u) + 2j * v * n / math.pi).real
    return float(np.polyfit(n, y, 1)[0])


def _log_one_minus_exp(w):
    # log(1 - e^w), stable on both sides of Re w = 0
    w = np.asarray(w, dtype=complex)
    neg = w.real < 0
    with np.errstate(over="ignore"):
        a = np.log1p(-np.exp(np.where(neg, w, -w)))
    return np.where(neg, a, w + np.log(np.exp(-w) - 1.0 + 0j))


def in_D(z: Point, delta: float, ctx: QContext) -> bool:
    """Membership of the annulus ``exp(-3 kappa pi/2) < |z e^delta| < exp(3 kappa pi/2)``."""
    lm = as_log(z).real + delta
    return abs(lm) < 1.5 * ctx.kappa * math.pi


def Phi(u: complex, mu: complex, z: Point, ctx: QContext, N: int | None = None) -> SeriesValue:
    """``z^{-i mu/kappa} sum_l Gamma(u+mu+i kappa l) / (1 - e^{2 pi i (mu + i kappa l)}) z^l``.

    ``z`` is a surface point in the annulus ``D_{kappa pi}``; ``mu`` must
    not be an integer.
    """
    u = complex(u)
    mu = complex(mu)
    kappa = ctx.kappa
    if abs(mu - round(mu.real)) < 1e-12:
        raise DomainError("Phi needs mu outside Z")
    _lattice_check(u + mu, kappa, "Phi")
    p = as_point(z)
    if not in_D(p, kappa * math.pi, ctx):
        raise DomainError("z lies outside the annulus D_{kappa pi}")
    lz = p.log

    def term_log(l):
        l = np.asarray(l)
        w = 2j * math.pi * mu - TWO_PI * kappa * l
        return loggamma(u + mu + 1j * kappa * l) + l * lz - _log_one_minus_exp(w)

    rp = math.exp(-kappa * math.pi / 2 + lz.real)
    rm = math.exp(-kappa * math.pi / 2 - TWO_PI * kappa - lz.real)
    s = _bilateral(term_log, rp, rm, N, ctx.rel_tol, ctx.max_terms,
                   poly=(u + mu).real - 0.5)
    pref = cmath.exp(-1j * mu / kappa * lz)
    return SeriesValue(pref * s.value, abs(pref) * s.abs_err, s.terms_used,
                       s.converged, s.stop_reason)


def phi_jump(u: complex, mu: complex, z: Point, ctx: QContext, N: int | None = None) -> complex:
    """``Phi(u, mu; q, z) - Phi(u, mu; q, z e^{-2 kappa pi})``."""
    p = as_point(z)
    shifted = SurfacePoint(p.log_modulus - TWO_PI * ctx.kappa, p.argument)
    return Phi(u, mu, p, ctx, N).value - Phi(u, mu, shifted, ctx, N).value
