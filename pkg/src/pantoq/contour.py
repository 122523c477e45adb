"""Contour-integral solutions.

``I(alpha; q, x)`` is a loop integral around ``{1, q, q^2, ...}`` and
``I_nu`` a Laplace integral along a ray; both carry the kernel
``theta(-alpha/t) / (1/t; q)_inf``.  For ``y'(x) = y(qx)`` there are
the entire solution ``f0``, the line integrals ``g`` and ``g_-`` and
the Hankel integral ``h``.

Every path is parameterised over a real interval (or a period) and
summed with the trapezoid rule, which converges geometrically for
integrands analytic in a strip around the path.  The error estimate is
the change between step ``h`` and ``h/2``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .qcore import (
    EPS, TWO_PI, DomainError, ConvergenceError, Point, QContext, SeriesValue,
    SurfacePoint, _qpoch_inf, as_point, gamma, log_qpoch_inf, log_theta,
    loggamma, q_power, theta,
)
from .series import G, F, _sum_until_small

# log-magnitude below the peak at which a path is cut off (e^-42 ~ 6e-19)
_LOG_CUT = 42.0
# e^{-xt} must decay along a ray: cos(arg x + d) above this
_SECTOR_MARGIN = 1e-3


@dataclass(frozen=True)
class ContourSpec:
    """A discretised integration path.

    ``kind`` is ``"circle"`` (radius ``radius``), ``"ray"``
    (``t = exp(s + i angle)``), ``"line"`` (``t = u + i sign offset``)
    or ``"hankel"`` (``t = apex (1 + i u)^2``, a parabola through
    ``apex`` wrapping the ray ``-apex``).  ``lo``/``hi`` bound the
    parameter; when left as None the range is found from the decay of
    the integrand.
    """

    kind: str
    radius: float = 2.0
    angle: float = math.pi / 2
    offset: float = 0.25
    sign: int = 1
    apex: complex = 1.0
    lo: float | None = None
    hi: float | None = None
    nodes: int = 256
    rel_tol: float = 1e-13
    max_nodes: int = 1 << 16

    def __post_init__(self):
        if self.kind not in ("circle", "ray", "line", "hankel"):
            raise DomainError(f"unknown contour kind {self.kind!r}")
        if self.kind == "circle" and self.radius <= 0:
            raise DomainError("circle radius must be positive")
        if self.kind == "line" and self.offset <= 0:
            raise DomainError("line offset must be positive")
        if self.kind == "hankel" and complex(self.apex).real <= 0:
            raise DomainError("Hankel apex must lie in the right half-plane")

    @classmethod
    def circle(cls, radius: float = 2.0, nodes: int = 256) -> "ContourSpec":
        return cls("circle", radius=radius, nodes=nodes)

    @classmethod
    def ray(cls, angle: float, lo: float | None = None, hi: float | None = None) -> "ContourSpec":
        return cls("ray", angle=angle, lo=lo, hi=hi)

    @classmethod
    def line(cls, offset: float, sign: int = 1, T: float | None = None) -> "ContourSpec":
        lo, hi = (None, None) if T is None else (-T, T)
        return cls("line", offset=offset, sign=1 if sign >= 0 else -1, lo=lo, hi=hi)

    @classmethod
    def hankel(cls, apex: complex = 1.0, U: float | None = None) -> "ContourSpec":
        lo, hi = (None, None) if U is None else (-U, U)
        return cls("hankel", apex=complex(apex), lo=lo, hi=hi)

    def param(self, u: np.ndarray):
        """Nodes ``t``, a continuous ``log t`` along the path, and ``dt/du``."""
        if self.kind == "circle":
            t = self.radius * np.exp(1j * u)
            return t, math.log(self.radius) + 1j * u, 1j * t
        if self.kind == "ray":
            lt = u + 1j * self.angle
            t = np.exp(lt)
            return t, lt, t
        if self.kind == "line":
            t = u + 1j * self.sign * self.offset
            return t, np.log(t), np.ones_like(t)
        c = complex(self.apex)
        z = 1.0 + 1j * u
        return c * z * z, cmath.log(c) + 2.0 * np.log(z), 2j * c * z

    def default_range(self) -> tuple[float, float]:
        if self.kind == "circle":
            return 0.0, TWO_PI
        if self.kind == "ray":
            return -40.0, 4.0
        if self.kind == "line":
            return -30.0, 30.0
        U = math.sqrt(60.0 / complex(self.apex).real) + 2.0
        return -U, U


def _trim(logF, spec: ContourSpec) -> tuple[float, float]:
    """Parameter range outside which ``|F|`` is below ``e^-42`` of its peak."""
    lo, hi = spec.default_range()
    if spec.kind == "circle":
        return lo, hi
    if spec.lo is not None and spec.hi is not None:
        return spec.lo, spec.hi
    for _ in range(40):
        u = np.linspace(lo, hi, 801)
        with np.errstate(all="ignore"):
            v = np.real(logF(u))
        v = np.where(np.isfinite(v), v, -np.inf)
        vmax = float(np.max(v))
        if not math.isfinite(vmax):
            raise ConvergenceError("integrand underflows on the whole search window")
        width = hi - lo
        grow_lo = v[0] > vmax - _LOG_CUT
        grow_hi = v[-1] > vmax - _LOG_CUT
        if not (grow_lo or grow_hi):
            keep = np.nonzero(v > vmax - _LOG_CUT)[0]
            step = u[1] - u[0]
            a = u[keep[0]] - 2 * step
            b = u[keep[-1]] + 2 * step
            return (spec.lo if spec.lo is not None else a,
                    spec.hi if spec.hi is not None else b)
        if grow_lo:
            lo -= width
        if grow_hi:
            hi += width
    raise ConvergenceError("integrand does not decay along the path")


def _trapezoid(logF, spec: ContourSpec, lo: float, hi: float) -> SeriesValue:
    periodic = spec.kind == "circle"
    n = spec.nodes if periodic else 64
    h = (hi - lo) / n

    def grid(h, start, count):
        return start + h * np.arange(count)

    u = grid(h, lo, n if periodic else n + 1)
    with np.errstate(all="ignore"):
        lv = logF(u)
    lv = np.where(np.isfinite(lv.real), lv, -np.inf + 0j)
    shift = float(np.max(lv.real))
    vals = np.exp(lv - shift)
    if not periodic:
        vals[0] *= 0.5
        vals[-1] *= 0.5
    total = h * np.sum(vals)
    absum = h * np.sum(np.abs(vals))
    while True:
        mid = grid(h, lo + 0.5 * h, n)
        with np.errstate(all="ignore"):
            lm = logF(mid)
        lm = np.where(np.isfinite(lm.real), lm, -np.inf + 0j)
        new = np.exp(lm - shift)
        h *= 0.5
        n *= 2
        refined = 0.5 * total + h * np.sum(new)
        absum = 0.5 * absum + h * np.sum(np.abs(new))
        diff = abs(refined - total)
        total = refined
        done = diff <= spec.rel_tol * abs(total) or diff <= EPS * absum
        if done or n >= spec.max_nodes:
            if shift > 700:
                raise ConvergenceError("integral overflows double precision")
            scale = math.exp(shift)
            err = (diff + 8 * EPS * absum) * scale
            return SeriesValue(complex(total) * scale, err, n, bool(done),
                               "tolerance" if done else "max_terms")


def integrate_log(log_integrand, spec: ContourSpec) -> SeriesValue:
    """``int log_integrand`` over the path, the integrand given by its log.

    ``log_integrand(t, logt)`` returns ``log f(t)`` for ``int f(t) dt``.
    """
    def logF(u):
        t, lt, dt = spec.param(u)
        return log_integrand(t, lt) + np.log(dt)

    lo, hi = _trim(logF, spec)
    return _trapezoid(logF, spec, lo, hi)


def integrate(f, spec: ContourSpec) -> SeriesValue:
    """``int f(t) dt`` along ``spec``; ``f(t, logt)`` is vectorised."""
    def log_f(t, lt):
        with np.errstate(divide="ignore"):
            return np.log(np.asarray(f(t, lt), dtype=complex))
    return integrate_log(log_f, spec)


# ---------------------------------------------------------------------------
# the loop integral I and the ray integrals I_nu

def _log_kernel(alpha: complex, t, lt, ctx: QContext):
    # log theta(-alpha/t) - log (1/t; q)_inf
    la = cmath.log(-alpha)
    return log_theta(ctx.log_q, la - lt) - log_qpoch_inf(np.exp(-lt), ctx.q)


def I_jordan(mu: complex, x: complex, spec: ContourSpec | None, ctx: QContext) -> SeriesValue:
    """``(1/2 pi i) oint theta(-alpha/t)/(1/t;q)_inf e^{-xt} dt/t`` on a circle."""
    spec = spec or ContourSpec.circle()
    if spec.kind != "circle" or spec.radius <= 1:
        raise DomainError("I needs a circle of radius > 1 around {1, q, q^2, ...}")
    alpha = q_power(mu, ctx)
    x = complex(x)

    def log_f(t, lt):
        return _log_kernel(alpha, t, lt, ctx) - x * t - lt - math.log(TWO_PI) - 0.5j * math.pi

    return integrate_log(log_f, spec)


def default_angle(x: Point) -> float:
    """Ray direction for ``I_nu`` at ``x``: as close to ``-arg x`` as the
    poles on the positive axis allow."""
    a = as_point(x).argument
    d = min(max(-a, math.pi / 6), TWO_PI - math.pi / 6)
    if math.cos(a + d) <= _SECTOR_MARGIN:
        raise DomainError(f"arg x = {a:.6g} is outside the sector (-5pi/2, pi/2)")
    return d


def I_nu_ray(nu: complex, mu: complex, x: Point, d: float | None, ctx: QContext,
             spec: ContourSpec | None = None) -> SeriesValue:
    """``int_0^{inf e^{id}} theta(-alpha/t)/(1/t;q)_inf e^{-xt} t^nu dt/t``.

    ``x`` must lie in ``S(-d - pi/2, -d + pi/2)``; with ``d=None`` the
    ray is chosen from ``arg x`` (so ``x`` and ``x e^{-2 pi i}`` use
    different rays and different branches of ``t^nu``).
    """
    nu = complex(nu)
    mu = complex(mu)
    if (nu + mu).real <= 0:
        raise DomainError("I_nu needs Re(nu + mu) > 0")
    p = as_point(x)
    if d is None:
        d = default_angle(p)
    if not 0 < d < TWO_PI:
        raise DomainError("ray angle must lie in (0, 2 pi)")
    if math.cos(p.argument + d) <= _SECTOR_MARGIN:
        raise DomainError(f"x is outside the sector S(-d - pi/2, -d + pi/2) for d = {d:.6g}")
    alpha = q_power(mu, ctx)
    xc = complex(p)
    if spec is None:
        lo = -(_LOG_CUT + 8.0) / (nu + mu).real - 4.0
        spec = ContourSpec("ray", angle=d, lo=lo)
    else:
        spec = ContourSpec("ray", angle=d, lo=spec.lo, hi=spec.hi)

    def log_f(t, lt):
        # dt/t cancels against the jacobian t of the log parameterisation
        return _log_kernel(alpha, t, lt, ctx) - xc * t + (nu - 1.0) * lt

    return integrate_log(log_f, spec)


def monodromy_constant(k: int, mu: complex, ctx: QContext) -> complex:
    """``C_k(alpha) = 2 pi i (-alpha)^k (q^{1-k}/alpha; q)_inf q^{k(k-1)/2}``."""
    alpha = q_power(mu, ctx)
    return (TWO_PI * 1j * (-alpha) ** k * _qpoch_inf(ctx.q ** (1 - k) / alpha, ctx.q)
            * ctx.q ** (k * (k - 1) / 2))


def monodromy_F(k: int, mu: complex, x: complex, ctx: QContext) -> SeriesValue:
    """``(I_k(x e^{-2 pi i}) - I_k(x)) / C_k(alpha)``, which equals ``F(mu+k; q, x)``."""
    x = complex(x)
    if x.real <= 0:
        raise DomainError("monodromy_F needs Re(x) > 0")
    c = monodromy_constant(k, mu, ctx)
    if abs(c) < 1e-300 or abs(c) < 1e-13 * TWO_PI:
        raise DomainError("C_k(alpha) vanishes: alpha q^{k-1} lies in q^N")
    p = as_point(x)
    a = I_nu_ray(k, mu, p.wind(-1), None, ctx)
    b = I_nu_ray(k, mu, p, None, ctx)
    return SeriesValue((a.value - b.value) / c, (a.abs_err + b.abs_err) / abs(c),
                       a.terms_used + b.terms_used, a.converged and b.converged)


def I_nu_G(m: int, nu: complex, x: Point, ctx: QContext) -> SeriesValue:
    """Closed form ``K_nu(m) x^{-(m+nu)} G(m+nu; q, 1/x)`` of ``I_nu(q^m; q, x)``
    with ``K_nu(m) = (-1)^m (q;q)_inf q^{-m(m-1)/2} Gamma(m+nu)``."""
    nu = complex(nu)
    if nu.real + m <= 0:
        raise DomainError("needs Re(nu) + m > 0")
    p = as_point(x)
    q = ctx.q
    K = (-1) ** m * _qpoch_inf(q, q) * q ** (-m * (m - 1) / 2) * gamma(m + nu)
    g = G(m + nu, complex(p.inverse()), ctx)
    pref = K * p.power(-(m + nu))
    return SeriesValue(pref * g.value, abs(pref) * g.abs_err, g.terms_used, g.converged)


def G_integral(nu: complex, x: Point, d: float, ctx: QContext) -> SeriesValue:
    """``G(nu; q, 1/x)`` from ``x^nu/Gamma(nu) int_0^{inf e^{id}} (qt;q)_inf e^{-xt} t^nu dt/t``."""
    nu = complex(nu)
    if nu.real <= 0:
        raise DomainError("needs Re(nu) > 0")
    p = as_point(x)
    if math.cos(p.argument + d) <= _SECTOR_MARGIN:
        raise DomainError("x is outside the sector of convergence for this ray")
    xc = complex(p)
    spec = ContourSpec("ray", angle=d, lo=-(_LOG_CUT + 8.0) / nu.real - 4.0)

    def log_f(t, lt):
        return log_qpoch_inf(ctx.q * t, ctx.q) - xc * t + (nu - 1.0) * lt

    r = integrate_log(log_f, spec)
    pref = p.power(nu) / gamma(nu)
    return SeriesValue(pref * r.value, abs(pref) * r.abs_err, r.terms_used, r.converged)


# ---------------------------------------------------------------------------
# y'(x) = y(qx)

def f0(x: complex, ctx: QContext) -> SeriesValue:
    """``f(q, x) = sum q^{n(n-1)/2} x^n / n!``, the entire solution with ``f(0) = 1``."""
    x = complex(x)
    q = ctx.q

    def step(n, t):
        return t * q ** n * x / (n + 1), abs(x) * q ** (n + 1) / (n + 2)

    s, err, n, ok, _ = _sum_until_small(step, 1.0 + 0j, ctx.rel_tol, ctx.max_terms)
    return SeriesValue(s, err, n + 1, ok, "tolerance" if ok else "max_terms")


def f0_derivative(x: complex, ctx: QContext) -> complex:
    """Termwise derivative of the f0 series."""
    x = complex(x)
    q = ctx.q
    s = 0j
    t = 1.0 + 0j  # q^{n(n+1)/2} x^n / n!
    for n in range(ctx.max_terms):
        s += t
        t *= q ** (n + 1) * x / (n + 1)
        if abs(t) < 1e-18 * abs(s) and n > 4:
            break
    return s


def f0_contour(x: complex, spec: ContourSpec | None, ctx: QContext) -> SeriesValue:
    """``(1/2 pi i) oint e^t theta(x/t) dt/t`` around the origin."""
    spec = spec or ContourSpec.circle(1.0)
    if spec.kind != "circle":
        raise DomainError("f0_contour needs a closed circle")
    lx = cmath.log(complex(x))

    def log_f(t, lt):
        return t + log_theta(ctx.log_q, lx - lt) - lt - math.log(TWO_PI) - 0.5j * math.pi

    return integrate_log(log_f, spec)


def g0_line(x: Point, sign: int, eps: float, ctx: QContext,
            spec: ContourSpec | None = None) -> SeriesValue:
    """``(1/2 pi i) int_{R +- i eps} q^{t(t+1)/2} Gamma(t) (x e^{-pi i})^{-t} dt``.

    ``sign=+1`` gives ``g``, ``sign=-1`` gives ``g_-``.  The lift
    ``x e^{-pi i}`` is taken on the surface, so ``g(x e^{2 pi i}) != g(x)``.
    """
    if eps < 1e-3:
        raise DomainError("eps < 1e-3 puts the path too close to the Gamma poles")
    p = as_point(x)
    L = p.rotate(-math.pi).log
    lq = ctx.log_q
    if spec is None:
        spec = ContourSpec.line(eps, sign)
    else:
        spec = ContourSpec("line", offset=eps, sign=1 if sign >= 0 else -1,
                           lo=spec.lo, hi=spec.hi)

    def log_f(t, lt):
        return (0.5 * t * (t + 1.0) * lq + loggamma(t) - t * L
                - math.log(TWO_PI) - 0.5j * math.pi)

    return integrate_log(log_f, spec)


def hankel_saddle(a: complex, p: float, lam: float) -> complex:
    """Saddle ``t_s`` of ``t + (lam/2)(Log t - a)^2 + p Log t``, i.e. the
    root of ``t + lam (Log t - a) + p = 0``, solved for ``w = Log t``."""
    a = complex(a)
    if lam == 0:
        return complex(-p)
    zeta = a - p / lam - math.log(lam)
    if abs(zeta) > 2.0:
        w0 = zeta - cmath.log(zeta)
    else:
        w0 = 0.5 + 0j
    w = a - p / lam - w0
    for _ in range(100):
        e = cmath.exp(w)
        F_ = e + lam * (w - a) + p
        step = F_ / (e + lam)
        w -= step
        if abs(step) < 1e-15 * max(1.0, abs(w)):
            break
    return cmath.exp(w) if abs(w.imag) < math.pi else complex("nan")


def hankel_kernel(a: complex, p: float, lam: float, spec: ContourSpec | None = None) -> SeriesValue:
    """``int_C exp(t + (lam/2)(Log t - a)^2) t^p dt`` over a Hankel contour.

    ``a`` may carry any imaginary part (it is ``Log x`` on the surface).
    The parabola is pushed through the saddle point when that saddle
    lies in the right half-plane, otherwise it keeps a real apex.
    """
    a = complex(a)
    if spec is None:
        ts = hankel_saddle(a, p, lam)
        if not (cmath.isfinite(ts) and ts.real > 0.2 and abs(cmath.phase(ts)) < 1.2):
            ts = complex(max(1.0, abs(ts)) if cmath.isfinite(ts) else 1.0)
        spec = ContourSpec.hankel(ts)

    def log_f(t, lt):
        d = lt - a
        return t + 0.5 * lam * d * d + p * lt

    return integrate_log(log_f, spec)


def h0(x: Point, spec: ContourSpec | None, ctx: QContext) -> SeriesValue:
    """``h(x) = (sqrt(kappa)/2 pi i) int_C exp(t - Log^2(sqrt(q) t / x)/(2 ln q)) dt/t``."""
    p = as_point(x)
    lam = -1.0 / ctx.log_q
    a = p.log - 0.5 * ctx.log_q
    r = hankel_kernel(a, -1.0, lam, spec)
    c = math.sqrt(ctx.kappa) / (TWO_PI * 1j)
    return SeriesValue(c * r.value, abs(c) * r.abs_err, r.terms_used, r.converged,
                       r.stop_reason)


def winding_sum(x: Point, n_max: int, ctx: QContext) -> SeriesValue:
    """``sum_{|n| <= n_max} h(x e^{2 pi i n})``."""
    p = as_point(x)
    vals = [h0(p.wind(n), None, ctx) for n in range(-n_max, n_max + 1)]
    return SeriesValue(sum(v.value for v in vals), sum(v.abs_err for v in vals),
                       sum(v.terms_used for v in vals), all(v.converged for v in vals))
