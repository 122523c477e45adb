"""Connection between the solution at 0 and the solutions at infinity.

For ``Re x > 0`` the entire solution ``F`` is a bilateral combination of
the solutions ``x^{-mu_k} G(mu_k; q, 1/x)`` with ``mu_k = mu + k kappa i``.
Regrouping the same double sum gives the Psi form in the modular
variable ``x* = x^{-kappa i}``.  The theta-ratio expansions and the
periodic coefficients ``g_n`` of the large-x expansion live here as well.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .qcore import (
    EPS, TWO_PI, DegenerateError, DomainError, Point, QContext, SeriesValue,
    SurfacePoint, _qpoch_inf, as_point, degenerate_index, gamma, loggamma,
    theta,
)
from .series import F, G, Psi


@dataclass(frozen=True)
class ConnectionParams:
    """Exponent ``mu`` and bilateral cutoff ``K`` (None picks K from ``tol``)."""

    mu: complex
    ctx: QContext
    K: int | None = None
    tol: float = 1e-14

    def __post_init__(self):
        object.__setattr__(self, "mu", complex(self.mu))
        if degenerate_index(self.mu, self.ctx.kappa) is not None:
            raise DegenerateError(
                f"mu = {self.mu} lies on the lattice Z<=0 + kappa*i*Z; "
                "use degenerate_identity")

    def mu_k(self, k: int) -> complex:
        return self.mu + 1j * k * self.ctx.kappa

    def cutoff(self, arg: float) -> int:
        """K such that the omitted Gamma tail is below ``tol``."""
        if self.K is not None:
            return self.K
        rate = self.ctx.kappa * (math.pi - 2.0 * abs(arg))
        return max(1, math.ceil(2.0 * math.log(1.0 / self.tol) / rate))

    def window(self, arg: float) -> range:
        """The 2K+1 indices k kept for ``arg x``.

        Terms decay like ``exp(-kappa (pi/2 -+ arg) |k|)`` on the two
        sides, so the window is shifted by ``(K+1) 2 arg/pi`` to balance
        the two omitted tails.
        """
        K = self.cutoff(arg)
        k0 = round((K + 1) * 2.0 * arg / math.pi)
        return range(k0 - K, k0 + K + 1)


def connection_constant(mu: complex, ctx: QContext) -> complex:
    """``kappa (q^mu; q)_inf / (2 pi (q; q)_inf)``."""
    q = ctx.q
    return ctx.kappa * _qpoch_inf(cmath.exp(complex(mu) * ctx.log_q), q) / (
        TWO_PI * _qpoch_inf(q, q).real)


def _right_half(x: Point) -> SurfacePoint:
    p = as_point(x)
    if not -math.pi / 2 < p.argument < math.pi / 2:
        raise DomainError(f"arg x = {p.argument:.6g} is outside (-pi/2, pi/2)")
    return p


def connection_rhs(p: ConnectionParams, x: Point) -> SeriesValue:
    """Right-hand side of the connection formula over the window of
    :meth:`ConnectionParams.window` (``2K+1`` consecutive k)."""
    x = _right_half(x)
    ctx = p.ctx
    ks = p.window(x.argument)
    inv = complex(x.inverse())
    terms = []
    errs = 0.0
    for k in ks:
        mk = p.mu_k(k)
        g = G(mk, inv, ctx)
        t = cmath.exp(loggamma(mk) - mk * x.log) * g.value
        terms.append(t)
        errs += abs(t) * g.abs_err / max(abs(g.value), 1e-300)
    c = connection_constant(p.mu, ctx)
    s = math.fsum(t.real for t in terms) + 1j * math.fsum(t.imag for t in terms)
    rho_up = math.exp(-ctx.kappa * (math.pi / 2 - x.argument))
    rho_down = math.exp(-ctx.kappa * (math.pi / 2 + x.argument))
    # the extra factor 2 covers the polynomial part of Stirling's formula
    tail = 2.0 * (abs(terms[-1]) * rho_up / (1.0 - rho_up)
                  + abs(terms[0]) * rho_down / (1.0 - rho_down))
    absum = sum(abs(t) for t in terms)
    err = abs(c) * (tail + errs + EPS * absum)
    ok = tail <= p.tol * max(abs(s), 1e-300) or tail * abs(c) < 1e-300
    return SeriesValue(c * s, err, len(terms), ok, "tolerance" if ok else "max_terms")


def connection_psi_rhs(p: ConnectionParams, x: Point, Nn: int | None = None) -> SeriesValue:
    """Psi regrouping: ``C x^{-mu} sum_n q^{n(n+1)/2}/(q;q)_n Psi(mu+n, kappa pi/2, x*) (-1/x)^n``.

    ``Nn=None`` sums until the terms stall below ``rel_tol``.
    """
    x = _right_half(x)
    ctx = p.ctx
    q = ctx.q
    xs = x.star(ctx.kappa)
    v = ctx.kappa * math.pi / 2
    inv = -complex(x.inverse())
    limit = ctx.max_terms if Nn is None else Nn
    s = 0j
    err = 0.0
    ok = True
    coef = 1.0 + 0j  # q^{n(n+1)/2} / (q;q)_n (-1/x)^n
    small = 0
    n = 0
    while n <= limit:
        ps = Psi(p.mu + n, v, xs, rel_tol=ctx.rel_tol, max_terms=ctx.max_terms)
        t = coef * ps.value
        s += t
        err += abs(coef) * ps.abs_err
        ok = ok and ps.converged
        if Nn is None:
            small = small + 1 if abs(t) <= ctx.rel_tol * abs(s) else 0
            if small >= 3:
                break
        n += 1
        coef *= q ** n / (1.0 - q ** n) * inv
    pref = connection_constant(p.mu, ctx) * x.power(-p.mu)
    if Nn is None and small < 3:
        ok = False
    return SeriesValue(pref * s, abs(pref) * (err + EPS * abs(s)), n + 1, ok,
                       "tolerance" if ok else "max_terms")


def degenerate_identity(m: int, x: complex, ctx: QContext) -> float:
    """Relative residual of ``F(-m; q, x) = (q;q)_m/m! q^{-m(m+1)/2} x^m G(-m; q, 1/x)``."""
    if m < 0:
        raise DomainError("m must be a natural number")
    x = complex(x)
    q = ctx.q
    lhs = F(-m, x, ctx).value
    qq = 1.0
    for j in range(1, m + 1):
        qq *= 1.0 - q ** j
    # x^m G(-m; q, 1/x) is a polynomial in x; expand it to avoid 1/x
    poch = 1.0
    rhs = 0j
    cq = 1.0
    for n in range(m + 1):
        rhs += poch * q ** (n * (n + 1) / 2) / cq * (-1) ** n * x ** (m - n)
        poch *= -m + n
        cq *= 1.0 - q ** (n + 1)
    rhs *= qq / math.factorial(m) * q ** (-m * (m + 1) / 2)
    scale = max(abs(lhs), abs(rhs), 1e-300)
    return abs(lhs - rhs) / scale


# ---------------------------------------------------------------------------
# theta ratios

def character_constant(mu: complex, m: int, ctx: QContext) -> complex:
    """``C(q,m,mu) = kappa (q^mu, q^{1-mu}; q)_inf e^{2(1-m) pi i mu} / (i (q;q)_inf^2)``."""
    mu = complex(mu)
    q = ctx.q
    a = cmath.exp(mu * ctx.log_q)
    b = cmath.exp((1 - mu) * ctx.log_q)
    qq = _qpoch_inf(q, q).real
    return (ctx.kappa * _qpoch_inf(a, q) * _qpoch_inf(b, q)
            * cmath.exp(2j * (1 - m) * math.pi * mu) / (1j * qq * qq))


def character_direct(mu: complex, x: Point, ctx: QContext) -> complex:
    """``theta(-q^mu x) / theta(-x)`` by bilateral theta sums."""
    p = as_point(x)
    lam = cmath.exp(complex(mu) * ctx.log_q)
    z = complex(p)
    return theta(-lam * z, ctx).value / theta(-z, ctx).value


def character_fourier(mu: complex, m: int, x: Point, L: int | None, ctx: QContext) -> SeriesValue:
    """Fourier expansion of ``theta(-q^mu x)/theta(-x)`` on the sector
    ``-2 m pi < arg x < 2 (1-m) pi``, truncated at ``|l| <= L``."""
    mu = complex(mu)
    if abs(mu - round(mu.real)) < 1e-12:
        raise DomainError("mu must not be an integer")
    p = as_point(x)
    lo, hi = -2 * m * math.pi, 2 * (1 - m) * math.pi
    if not lo < p.argument < hi:
        raise DomainError(f"arg x = {p.argument:.6g} is outside ({lo:.6g}, {hi:.6g})")
    kappa = ctx.kappa
    # ratios of consecutive terms for l -> +inf and l -> -inf
    r_plus = math.exp(kappa * (p.argument - hi))
    r_minus = math.exp(kappa * (lo - p.argument))
    if L is None:
        r = max(r_plus, r_minus)
        L = max(1, math.ceil(math.log(ctx.rel_tol * (1 - r)) / math.log(r)))
    s = 0j
    absum = 0.0
    e2 = cmath.exp(2j * math.pi * mu)
    for l in range(-L, L + 1):
        # e^{2 pi (m-1) kappa l} x^{-kappa i l}, combined in log form
        lt = TWO_PI * (m - 1) * kappa * l - 1j * kappa * l * p.log
        if l >= 0:
            t = cmath.exp(lt) / (1.0 - e2 * math.exp(-TWO_PI * kappa * l))
        else:
            # 1/(1 - e^{2 pi i mu} e^{-2 pi kappa l}) with the huge factor pulled out
            lt += TWO_PI * kappa * l
            t = cmath.exp(lt) / (math.exp(TWO_PI * kappa * l) - e2)
        s += t
        absum += abs(t)
    pref = character_constant(mu, m, ctx) * p.power(-mu)
    tail = 2.0 * absum * max(r_plus, r_minus) ** (L + 1) / (1 - max(r_plus, r_minus))
    err = abs(pref) * (tail + EPS * absum)
    return SeriesValue(pref * s, err, 2 * L + 1, True)


def ramanujan_laurent(lam: complex, m: int, x: complex, L: int | None, ctx: QContext) -> SeriesValue:
    """Laurent expansion of ``theta(-lam x)/theta(-x)`` on ``q^m < |x| < q^{m-1}``."""
    lam = complex(lam)
    x = complex(x)
    q = ctx.q
    if lam == 0:
        raise DomainError("lambda must be non-zero")
    j = math.log(abs(lam)) / ctx.log_q
    if abs(j - round(j)) < 1e-12 and abs(cmath.phase(lam)) < 1e-12:
        raise DomainError("lambda must not lie in q^Z")
    lo, hi = q ** m, q ** (m - 1)
    if not lo < abs(x) < hi:
        raise DomainError(f"|x| = {abs(x):.6g} is outside ({lo:.6g}, {hi:.6g})")
    r_plus = abs(x) / hi
    r_minus = lo / abs(x)
    r = max(r_plus, r_minus)
    if L is None:
        L = max(1, math.ceil(math.log(ctx.rel_tol * (1 - r)) / math.log(r)))
    y = q ** (1 - m) * x
    s = 0j
    absum = 0.0
    for l in range(-L, L + 1):
        t = y ** l / (1.0 - lam * q ** l)
        s += t
        absum += abs(t)
    qq = _qpoch_inf(q, q).real
    pref = lam ** (1 - m) * theta(-lam, ctx).value / qq ** 3
    tail = 2.0 * max(abs(y ** L), abs(y ** -L / lam) * q ** L) * r / (1 - r)
    return SeriesValue(pref * s, abs(pref) * (tail + EPS * absum), 2 * L + 1, True)


# ---------------------------------------------------------------------------
# periodic coefficients of the large-x expansion

def km_g(n: int, mu: complex, s: float, ctx: QContext, L: int | None = None,
         deriv: int = 0) -> complex:
    """``g_n(s) = (-1)^n C Psi(n+mu, kappa pi/2, e^{-i kappa s})``, or its
    ``deriv``-th derivative in ``s``.

    ``g_n`` has period ``|ln q|`` in ``s`` and satisfies
    ``g_{n+1} = g_n' - (mu+n) g_n``.
    """
    mu = complex(mu)
    if degenerate_index(mu, ctx.kappa) is not None:
        raise DegenerateError("g_n is undefined for degenerate mu")
    kappa = ctx.kappa
    u = mu + n
    z = -1j * kappa * s
    if L is None:
        # |Gamma(u + i kappa l)| ~ e^{-pi kappa |l|/2}, times (kappa l)^deriv
        L = 4
        while (math.exp(-math.pi * kappa * L / 2) * (kappa * L) ** (deriv + abs(u.real) + 1)
               > 1e-17):
            L += 1
    total = 0j
    for l in range(-L, L + 1):
        t = cmath.exp(loggamma(u + 1j * kappa * l) + l * z)
        if deriv:
            t *= (-1j * kappa * l) ** deriv
        total += t
    return (-1) ** n * connection_constant(mu, ctx) * total
