"""Base arithmetic for the pantograph library.

q-Pochhammer symbols, rising factorials, q-binomials, the Jacobi theta
function (bilateral series and triple product), the Gaussian factor
``e(q, x)``, theta modular duality, points of the Riemann surface of the
logarithm and a complex Gamma function.

Everything works in double precision.  Series and products return a
:class:`SeriesValue` carrying an error estimate next to the value.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

TWO_PI = 2.0 * math.pi
EPS = np.finfo(float).eps

# q-Pochhammer truncation: stop once |a| q^j drops below this.
_QPOCH_CUTOFF = 1e-18
# theta: keep terms within exp(-_THETA_WINDOW) of the dominant one.
_THETA_WINDOW = 42.0


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class DegenerateError(DomainError):
    """The exponent mu sits on the lattice Z_{<=0} + i*kappa*Z."""


class ConvergenceError(RuntimeError):
    """A series, iteration or quadrature failed to reach its tolerance."""


@dataclass(frozen=True)
class QContext:
    """Fixed base ``q`` in (0, 1) plus the constants derived from it.

    ``kappa = -2*pi/ln q`` and ``q_star = exp(-2*pi*kappa)`` is the dual
    base of the modular transformation.
    """

    q: float
    rel_tol: float = 1e-15
    max_terms: int = 5000
    kappa: float = field(init=False)
    q_star: float = field(init=False)

    def __post_init__(self):
        q = float(self.q)
        if not 0.0 < q < 1.0:
            raise DomainError(f"q must lie in (0, 1), got {self.q!r}")
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")
        if self.max_terms < 16:
            raise DomainError("max_terms must be at least 16")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "kappa", -TWO_PI / math.log(q))
        object.__setattr__(self, "q_star", math.exp(-TWO_PI * self.kappa))

    @property
    def log_q(self) -> float:
        return math.log(self.q)

    @property
    def log_q_star(self) -> float:
        # q_star underflows for q close to 1, its logarithm never does
        return -TWO_PI * self.kappa


@dataclass(frozen=True)
class SeriesValue:
    """A complex result with an absolute error estimate."""

    value: complex
    abs_err: float
    terms_used: int
    converged: bool = True
    stop_reason: str = "tolerance"  # tolerance | max_terms | divergent

    def __complex__(self):
        return complex(self.value)

    @property
    def rel_err(self) -> float:
        a = abs(self.value)
        return self.abs_err / a if a > 0 else math.inf


@dataclass(frozen=True)
class SurfacePoint:
    """A point of the Riemann surface of the logarithm.

    Stored as ``(ln|x|, arg x)`` with an unbounded argument, so that
    ``x`` and ``x*exp(2*pi*i)`` are distinct points.
    """

    log_modulus: float
    argument: float

    @classmethod
    def from_complex(cls, z: complex, winding: int = 0) -> "SurfacePoint":
        z = complex(z)
        if z == 0:
            raise DomainError("0 is not a point of the log surface")
        return cls(math.log(abs(z)), cmath.phase(z) + TWO_PI * winding)

    @classmethod
    def polar(cls, r: float, arg: float) -> "SurfacePoint":
        if r <= 0:
            raise DomainError("modulus must be positive")
        return cls(math.log(r), float(arg))

    @property
    def log(self) -> complex:
        return complex(self.log_modulus, self.argument)

    @property
    def modulus(self) -> float:
        return math.exp(self.log_modulus)

    def __complex__(self):
        return cmath.exp(self.log)

    def to_complex(self) -> complex:
        return cmath.exp(self.log)

    def power(self, mu: complex) -> complex:
        """``x**mu = exp(mu * Log x)`` on the surface."""
        return cmath.exp(complex(mu) * self.log)

    def wind(self, k: int | float) -> "SurfacePoint":
        """``x * exp(2*pi*i*k)``; a different surface point for k != 0."""
        return SurfacePoint(self.log_modulus, self.argument + TWO_PI * k)

    def rotate(self, angle: float) -> "SurfacePoint":
        return SurfacePoint(self.log_modulus, self.argument + angle)

    def neg(self) -> "SurfacePoint":
        """``-x`` read as ``exp(i*pi) * x``."""
        return self.rotate(math.pi)

    def scale(self, r: float) -> "SurfacePoint":
        if r <= 0:
            raise DomainError("scale factor must be positive")
        return SurfacePoint(self.log_modulus + math.log(r), self.argument)

    def times(self, other: "SurfacePoint") -> "SurfacePoint":
        return SurfacePoint(self.log_modulus + other.log_modulus,
                            self.argument + other.argument)

    def inverse(self) -> "SurfacePoint":
        return SurfacePoint(-self.log_modulus, -self.argument)

    def star(self, kappa: float) -> complex:
        """Modular variable ``x* = x**(-i*kappa)``; ``|x*| = exp(kappa*arg x)``."""
        return cmath.exp(-1j * kappa * self.log)


Point = Union[SurfacePoint, complex, float]


def as_point(x: Point) -> SurfacePoint:
    """Lift ``x`` to the surface; plain numbers take the principal argument."""
    if isinstance(x, SurfacePoint):
        return x
    return SurfacePoint.from_complex(x)


def as_log(x: Point) -> complex:
    return as_point(x).log


# ---------------------------------------------------------------------------
# products

def pochhammer(a: complex, n: int) -> complex:
    """Rising factorial ``(a)_n = a (a+1) ... (a+n-1)``."""
    if n < 0:
        raise DomainError("n must be a natural number")
    p = 1.0 + 0j
    for j in range(n):
        p *= a + j
    return p


def _qpoch_inf(a: complex, q: float) -> complex:
    # (a; q)_inf with a first-order tail correction
    p = 1.0 + 0j
    aj = complex(a)
    while abs(aj) >= _QPOCH_CUTOFF:
        p *= 1.0 - aj
        aj *= q
    return p * cmath.exp(-aj / (1.0 - q))


def qpoch(a: complex, n: int | float | None, ctx: QContext) -> SeriesValue:
    """q-Pochhammer symbol ``(a; q)_n``; ``n=None`` or ``math.inf`` for the
    infinite product."""
    q = ctx.q
    a = complex(a)
    if n is None or n == math.inf:
        p = 1.0 + 0j
        aj = a
        j = 0
        while abs(aj) >= _QPOCH_CUTOFF and j < ctx.max_terms:
            p *= 1.0 - aj
            aj *= q
            j += 1
        converged = abs(aj) < _QPOCH_CUTOFF
        tail = aj / (1.0 - q)
        p *= cmath.exp(-tail)
        err = abs(p) * (abs(tail) ** 2 + 4 * EPS * (j + 1))
        return SeriesValue(p, err, j, converged)
    n = int(n)
    if n < 0:
        raise DomainError("n must be a natural number or infinity")
    p = 1.0 + 0j
    aj = a
    for _ in range(n):
        p *= 1.0 - aj
        aj *= q
    return SeriesValue(p, abs(p) * EPS * (n + 1), n, True)


def qpoch_inf(a: complex, ctx: QContext) -> complex:
    return _qpoch_inf(a, ctx.q)


def qbinomial(n: int, k: int, ctx: QContext) -> complex:
    """Gaussian binomial ``(q;q)_n / ((q;q)_k (q;q)_{n-k})``."""
    if not 0 <= k <= n:
        raise DomainError(f"q-binomial needs 0 <= k <= n, got n={n}, k={k}")
    q = ctx.q
    k = min(k, n - k)
    r = 1.0
    for j in range(k):
        r *= (1.0 - q ** (n - j)) / (1.0 - q ** (j + 1))
    return complex(r)


def log_qpoch_inf(a, q: float):
    """Vectorised ``log (a; q)_inf`` (sum of principal logs) for arrays."""
    a = np.asarray(a, dtype=complex)
    amax = float(np.max(np.abs(a))) if a.size else 0.0
    out = np.zeros_like(a)
    if amax == 0.0:
        return out
    jmax = max(0, int(math.ceil(math.log(_QPOCH_CUTOFF / amax) / math.log(q))))
    aj = a.copy()
    for _ in range(jmax + 1):
        out += np.log(1.0 - aj)
        aj = aj * q
    return out - aj / (1.0 - q)


# ---------------------------------------------------------------------------
# theta

def _theta_window(log_q: float) -> int:
    return int(math.ceil(math.sqrt(2.0 * _THETA_WINDOW / -log_q))) + 2


def log_theta(log_q: float, log_x):
    """Vectorised logarithm of ``sum_n q^{n(n-1)/2} x^n``.

    ``log_x`` is a (complex) array of logarithms of ``x``; the imaginary
    part of the result is defined modulo ``2*pi``.
    """
    lx = np.atleast_1d(np.asarray(log_x, dtype=complex))
    w = _theta_window(log_q)
    centre = np.rint(0.5 - lx.real / log_q)
    n = centre[:, None] + np.arange(-w, w + 1)[None, :]
    e = 0.5 * n * (n - 1.0) * log_q + n * lx[:, None]
    emax = np.max(e.real, axis=1)
    with np.errstate(divide="ignore"):
        s = np.log(np.sum(np.exp(e - emax[:, None]), axis=1))
    out = s + emax
    return out if np.ndim(log_x) else out[0]


def _theta_core(log_q: float, lx: complex) -> SeriesValue:
    w = _theta_window(log_q)
    centre = round(0.5 - lx.real / log_q)
    lo, hi = centre - w, centre + w
    n = np.arange(lo, hi + 1, dtype=float)
    e = 0.5 * n * (n - 1.0) * log_q + n * lx
    emax = float(np.max(e.real))
    terms = np.exp(e - emax)
    scale = math.exp(emax) if emax < 709 else math.inf
    total = complex(np.sum(terms)) * scale
    edge = [0.5 * m * (m - 1.0) * log_q + m * lx.real for m in (lo - 1, hi + 1)]
    q = math.exp(log_q)
    tail = sum(math.exp(v) for v in edge) / (1.0 - q)
    err = tail + EPS * len(n) * float(np.sum(np.abs(terms))) * scale
    return SeriesValue(total, err, len(n), True)


def theta(x: Point, ctx: QContext, *, log_q: float | None = None) -> SeriesValue:
    """Jacobi theta ``theta(q, x) = sum_{n in Z} q^{n(n-1)/2} x^n``.

    The sum is truncated around its dominant term, so ``|x|`` may be
    large.  ``log_q`` overrides the base, which is how the dual base
    ``q*`` is evaluated without underflow.
    """
    if not isinstance(x, SurfacePoint) and complex(x) == 0:
        raise DomainError("theta is not defined at x = 0")
    lq = ctx.log_q if log_q is None else log_q
    return _theta_core(lq, as_log(x))


def theta_triple(x: Point, ctx: QContext) -> SeriesValue:
    """Theta through the Jacobi triple product ``(q, -x, -q/x; q)_inf``."""
    z = complex(as_point(x))
    parts = [qpoch(ctx.q, None, ctx), qpoch(-z, None, ctx), qpoch(-ctx.q / z, None, ctx)]
    v = parts[0].value * parts[1].value * parts[2].value
    err = sum(p.abs_err / abs(p.value) if p.value != 0 else 0.0 for p in parts) * abs(v)
    return SeriesValue(v, err, sum(p.terms_used for p in parts), True)


def e_factor(x: Point, ctx: QContext) -> complex:
    """Gaussian factor ``exp(-Log^2(x/sqrt q) / (2 ln q))``.

    Solves ``x y(qx) = y(x)`` like theta does, but is ramified.
    """
    L = as_log(x) - 0.5 * ctx.log_q
    return cmath.exp(-L * L / (2.0 * ctx.log_q))


def verify_theta_modular(x: Point, ctx: QContext) -> float:
    """Residual of ``theta(q,-x) = sqrt(kappa) e(q,-x) theta(q*,-x*)``.

    ``-x`` is the surface point ``exp(i*pi) x``; ``-x*`` is the negated
    modular variable.  The difference is measured against
    ``theta(q, |x|)``, the sum of the absolute values of the series
    terms: theta itself vanishes on ``-q^Z`` and is exponentially small
    near the unit circle when q is close to 1.
    """
    # in logs throughout: |x*| = exp(kappa arg x) overflows for q near 1
    lx = as_point(x).log + 1j * math.pi
    lhs = log_theta(ctx.log_q, lx)
    L = lx - 0.5 * ctx.log_q
    rhs = (0.5 * math.log(ctx.kappa) - L * L / (2.0 * ctx.log_q)
           + log_theta(ctx.log_q_star, -1j * ctx.kappa * as_point(x).log + 1j * math.pi))
    scale = log_theta(ctx.log_q, lx.real).real
    return abs(cmath.exp(lhs - scale) - cmath.exp(rhs - scale))


def verify_eta(ctx: QContext) -> float:
    """Relative residual of ``(q*; q*)_inf = q^{1/24} kappa^{-1/2} e^{kappa pi/12} (q; q)_inf``."""
    lhs = _qpoch_inf(ctx.q_star, ctx.q_star).real
    rhs = (math.exp(ctx.log_q / 24.0 + ctx.kappa * math.pi / 12.0)
           / math.sqrt(ctx.kappa) * _qpoch_inf(ctx.q, ctx.q).real)
    return abs(lhs - rhs) / abs(lhs)


# ---------------------------------------------------------------------------
# Gamma

_LANCZOS_G_HALF = 671.0 / 128.0
_LANCZOS = (
    0.999999999999997092,
    57.1562356658629235, -59.5979603554754912, 14.1360979747417471,
    -0.491913816097620199, 0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
    0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5,
)
_LOG_SQRT_2PI = 0.5 * math.log(TWO_PI)
_LOG_PI = math.log(math.pi)


def _loggamma_right(z):
    # Lanczos approximation, valid for Re z >= 1/2
    ser = np.full_like(z, _LANCZOS[0])
    for j, c in enumerate(_LANCZOS[1:], start=1):
        ser = ser + c / (z + j)
    t = z + _LANCZOS_G_HALF
    return (z + 0.5) * np.log(t) - t + _LOG_SQRT_2PI + np.log(ser / z)


def _log_sin(w):
    # log sin(w) without overflow for large |Im w|
    up = w.imag >= 0
    s = np.where(up, 1.0, -1.0)
    # sin w = exp(-i s w) * (exp(2 i s w) - 1) / (2 i s)
    return -1j * s * w + np.log((np.exp(2j * s * w) - 1.0) / (2j * s))


def loggamma(z):
    """A logarithm of Gamma(z) (real part exact, branch unspecified).

    Works on scalars and complex arrays; reflection is applied for
    ``Re z < 1/2``.
    """
    zz = np.asarray(z, dtype=complex)
    scalar = zz.ndim == 0
    zz = np.atleast_1d(zz)
    left = zz.real < 0.5
    out = np.empty_like(zz)
    if np.any(~left):
        out[~left] = _loggamma_right(zz[~left])
    if np.any(left):
        zl = zz[left]
        with np.errstate(divide="ignore", invalid="ignore"):
            out[left] = _LOG_PI - _log_sin(np.pi * zl) - _loggamma_right(1.0 - zl)
    return complex(out[0]) if scalar else out


def _near_pole(z: complex, tol: float = 1e-12) -> bool:
    if z.real > 0.5:
        return False
    n = round(z.real)
    return n <= 0 and abs(z - n) < tol


def gamma(z: complex) -> complex:
    """Euler Gamma function for complex ``z`` (Lanczos + reflection)."""
    z = complex(z)
    if _near_pole(z):
        raise DomainError(f"Gamma has a pole at {round(z.real)}")
    if z.real < 0.5 and abs(z.imag) < 30:
        # plain reflection keeps full accuracy near the real axis
        return math.pi / complex(_sinpi(z) * cmath.exp(loggamma(1.0 - z)))
    return cmath.exp(loggamma(z))


def _sinpi(z):
    # reduce by the nearest integer first; z - n is exact, pi*z is not
    n = np.round(np.real(z))
    return np.where(n % 2 == 0, 1, -1) * np.sin(np.pi * (z - n))


def gamma_array(z):
    """Vectorised Gamma; poles give ``inf``/``nan`` instead of raising."""
    zz = np.asarray(z, dtype=complex)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        out = np.exp(loggamma(zz))
        left = (zz.real < 0.5) & (np.abs(zz.imag) < 30)
        if np.any(left):
            zl = zz[left]
            out[left] = np.pi / (_sinpi(zl) * np.exp(loggamma(1.0 - zl)))
    return out


# ---------------------------------------------------------------------------
# lattice of degenerate exponents

def degenerate_index(mu: complex, kappa: float, tol: float = 1e-9):
    """Return ``(m, k)`` if ``mu = -m + k*kappa*i`` within ``tol``, else None."""
    mu = complex(mu)
    m = round(-mu.real)
    k = round(mu.imag / kappa)
    if m >= 0 and abs(mu - complex(-m, k * kappa)) < tol:
        return m, k
    return None


def q_power(mu: complex, ctx: QContext) -> complex:
    """``alpha = q**mu``; exact ``q**(-m)`` on the degenerate lattice."""
    deg = degenerate_index(mu, ctx.kappa)
    if deg is not None:
        return complex(ctx.q ** (-deg[0]))
    return cmath.exp(complex(mu) * ctx.log_q)
