"""Large-x behaviour of the Hankel solution of ``y'(x) = y(qx)``.

The expansion is built from the Lambert function ``W``, the germ
``l(z) = W(-exp(-1 - z^2/2)) + 1``, and the Taylor coefficients ``V_n``
of ``V(s) = exp(lam/2 (l^2 + s^2 l + s^4/4)) l'(s)``.  Coefficients are
computed exactly with :class:`fractions.Fraction`; a polynomial in
``lam`` is a tuple of Fractions, lowest degree first.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from .contour import hankel_kernel
from .qcore import (
    ConvergenceError, DomainError, Point, QContext, SeriesValue, as_point,
)

_INV_E = math.exp(-1.0)
_ELL_RADIUS = 2.0 * math.sqrt(math.pi)

# remainder constants of |r_N| <= C A^N N! / omega^{N+1}, fitted on the
# contour ladder |x| = 25 * 2^k for lam in {1, 1/ln 2}
REMAINDER_C = 2.0
REMAINDER_A = 2.0


# ---------------------------------------------------------------------------
# Lambert W

def lambert_w(z: complex, tol: float = 1e-15, max_iter: int = 64) -> complex:
    """Principal branch of ``W`` (``w e^w = z``) by Halley iteration.

    Raises :class:`ConvergenceError` rather than returning a poor root.
    """
    z = complex(z)
    if z == 0:
        return 0j
    if abs(z + _INV_E) < 1e-15:
        return -1.0 + 0j
    if abs(z + _INV_E) < 0.5 or (z.real <= -0.3 and abs(z) < 1.2):
        # series in p = sqrt(2(ez + 1)) around the branch point
        p = cmath.sqrt(2.0 * (math.e * z + 1.0))
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3
    elif abs(z) < 3.0 and z.real > -0.3:
        # Winitzki's guess, good on the principal sheet away from the branch point
        L = cmath.log(1.0 + z)
        w = L * (1.0 - cmath.log(1.0 + L) / (2.0 + L))
    else:
        L1 = cmath.log(z)
        w = L1 - cmath.log(L1)
    for _ in range(max_iter):
        ew = cmath.exp(w)
        f = w * ew - z
        wp1 = w + 1.0
        if wp1 == 0:
            break
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= step
        if abs(step) <= tol * max(1.0, abs(w)):
            break
    if abs(w * cmath.exp(w) - z) > 1e-13 * max(1.0, abs(z)):
        raise ConvergenceError(f"Halley iteration for W({z}) did not converge")
    return w


def lambert_w_log(log_z: complex, max_iter: int = 64) -> complex:
    """Solve ``w + log w = log_z`` for ``w``; the surface version of ``W``.

    For a principal ``log_z`` this is ``W(exp(log_z))``; a winding in
    ``Im log_z`` is carried into ``w`` continuously.
    """
    zeta = complex(log_z)
    if abs(zeta) < 2.0:
        return lambert_w(cmath.exp(zeta))
    w = zeta - cmath.log(zeta)
    for _ in range(max_iter):
        f = w + cmath.log(w) - zeta
        step = f / (1.0 + 1.0 / w)
        w -= step
        if abs(step) <= 1e-15 * abs(w):
            return w
    raise ConvergenceError("log-form Lambert iteration did not converge")


def w_asymptotic(z: complex) -> complex:
    """``log z - L2 + L2/log z`` with ``L2 = log log z``."""
    z = complex(z)
    L1 = cmath.log(z)
    L2 = cmath.log(L1)
    w = L1 - L2 + L2 / L1
    return complex(w.real, 0.0) if z.imag == 0 and z.real > 1 else w


def omega(lam: float, x: Point) -> complex:
    """``omega(x) = lam W(x/lam)``, so that ``omega e^{omega/lam} = x``."""
    if lam <= 0:
        raise DomainError("lambda must be positive")
    p = as_point(x)
    return lam * lambert_w_log(p.log - math.log(lam))


# ---------------------------------------------------------------------------
# exact coefficients

@lru_cache(maxsize=None)
def ell_coeffs(N: int) -> tuple[Fraction, ...]:
    """Taylor coefficients ``c_0..c_N`` of ``l`` (``c_0 = 0``, ``c_1 = 1``).

    From ``l l' = (1 - l) z``:
    ``c_n = -c_{n-1}/(n+1) - 1/2 sum_{k=2}^{n-1} c_k c_{n+1-k}``.
    """
    if N < 1:
        raise DomainError("N must be at least 1")
    c = [Fraction(0), Fraction(1)]
    for n in range(2, N + 1):
        s = sum((c[k] * c[n + 1 - k] for k in range(2, n)), Fraction(0))
        c.append(-c[n - 1] / (n + 1) - s / 2)
    return tuple(c)


def ell(z: complex, N: int | None = None) -> complex:
    """Truncated series of ``l`` inside its disc ``|z| < 2 sqrt(pi)``."""
    z = complex(z)
    r = abs(z)
    if r >= _ELL_RADIUS - 0.2:
        raise DomainError(f"|z| = {r:.6g} too close to the radius 2 sqrt(pi)")
    if N is None:
        # geometric decay at rate |z| / 2 sqrt(pi), down to 1e-17
        N = max(8, int(math.ceil(math.log(1e-17) / math.log(max(r, 1e-3) / _ELL_RADIUS))) + 10)
    c = ell_coeffs(N)
    s = 0j
    for k in range(N, 0, -1):
        s = (s + float(c[k])) * z
    return s


def ell_w(z: complex) -> complex:
    """``W(-exp(-1 - z^2/2)) + 1``, the closed form of ``l`` for ``Re z > 0``."""
    z = complex(z)
    return lambert_w(-cmath.exp(-1.0 - 0.5 * z * z)) + 1.0


def _poly_add(a, b):
    n = max(len(a), len(b))
    return tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def _poly_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _poly_scale(a, s):
    return tuple(x * s for x in a)


def _trim_poly(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


@lru_cache(maxsize=None)
def V_coeffs(N: int) -> tuple[tuple[Fraction, ...], ...]:
    """``V_0..V_N`` as polynomials in ``lam`` (tuples of Fractions, low degree first)."""
    if N < 0:
        raise DomainError("N must be a natural number")
    c = ell_coeffs(N + 4)
    ell_s = [c[k] for k in range(N + 1)]
    # P = l^2 + s^2 l + s^4/4 up to s^N
    P = [Fraction(0)] * (N + 1)
    for i in range(1, N + 1):
        for j in range(1, N + 1 - i):
            P[i + j] += ell_s[i] * ell_s[j]
    for i in range(1, N - 1):
        P[i + 2] += ell_s[i]
    if N >= 4:
        P[4] += Fraction(1, 4)
    # A = (lam/2) P; E = exp(A) through n e_n = sum_k k a_k e_{n-k}
    A = [(Fraction(0), p / 2) for p in P]
    E = [(Fraction(1),)]
    for n in range(1, N + 1):
        acc = ()
        for k in range(1, n + 1):
            if P[k]:
                acc = _poly_add(acc, _poly_scale(_poly_mul(A[k], E[n - k]), k))
        E.append(_trim_poly(_poly_scale(acc, Fraction(1, n))))
    dl = [(k + 1) * c[k + 1] for k in range(N + 1)]
    V = []
    for n in range(N + 1):
        acc = ()
        for k in range(n + 1):
            acc = _poly_add(acc, _poly_scale(E[k], dl[n - k]))
        V.append(_trim_poly(acc) or (Fraction(0),))
    return tuple(V)


@lru_cache(maxsize=None)
def U_coeffs(N: int) -> tuple[tuple[Fraction, ...], ...]:
    """``u_n = (2n)! V_{2n} / (2^n n!)`` for ``n = 0..N``."""
    V = V_coeffs(2 * N)
    return tuple(_poly_scale(V[2 * n], Fraction(math.factorial(2 * n), 2 ** n * math.factorial(n)))
                 for n in range(N + 1))


def poly_eval(p, lam: float) -> float:
    s = 0.0
    for coef in reversed(p):
        s = s * lam + float(coef)
    return s


def U_N_eval(z: complex, lam: float, N: int) -> complex:
    """``U_N(z) = 1 + sum_{n=1}^N u_n(lam) (-1/z)^n``."""
    z = complex(z)
    if N < 0:
        raise DomainError("N must be a natural number")
    u = U_coeffs(N)
    s = 0j
    for n in range(N, 0, -1):
        s = (s + poly_eval(u[n], lam)) * (-1.0 / z)
    return 1.0 + s


# ---------------------------------------------------------------------------
# u(lam, x) and h(x)

def u_contour(lam: float, x: Point) -> SeriesValue:
    """``u(lam, x) = int_C e^{xt + (lam/2) log^2 t} dt`` as ``(1/x) int_C e^{s + (lam/2) Log^2(s/x)} ds``."""
    if lam <= 0:
        raise DomainError("lambda must be positive")
    p = as_point(x)
    r = hankel_kernel(p.log, 0.0, lam)
    inv = complex(p.inverse())
    return SeriesValue(inv * r.value, abs(inv) * r.abs_err, r.terms_used, r.converged)


def _saddle_prefactor(lam: float, w: complex) -> complex:
    return 1j * cmath.exp(w * w / (2.0 * lam) + (1.0 - 1.0 / lam) * w) * cmath.sqrt(2.0 * math.pi / w)


def remainder_bound(N: int, omega_abs: float, C: float = REMAINDER_C,
                    A: float = REMAINDER_A) -> float:
    """``C A^N N! / omega^{N+1}``."""
    return C * A ** N * math.factorial(N) / omega_abs ** (N + 1)


def optimal_order(omega_abs: float, A: float = REMAINDER_A, N_max: int = 60) -> int:
    """The N minimising ``A^N N! / omega^{N+1}``, close to ``omega/A``."""
    best, arg = math.inf, 0
    for N in range(N_max + 1):
        b = remainder_bound(N, omega_abs, 1.0, A)
        if b < best:
            best, arg = b, N
    return arg


def u_saddle(lam: float, x: Point, N: int) -> tuple[complex, float]:
    """Saddle-point value of ``u`` and the absolute bound on its remainder."""
    if lam <= 0:
        raise DomainError("lambda must be positive")
    p = as_point(x)
    w = omega(lam, p)
    pref = _saddle_prefactor(lam, w)
    w_abs = omega(lam, p.modulus).real
    return pref * U_N_eval(w, lam, N), abs(pref) * remainder_bound(N, w_abs)


def h_asymptotic(x: Point, N: int, ctx: QContext, min_omega: float = 4.5) -> complex:
    """Large-x expansion of the Hankel solution ``h`` of ``y'(x) = y(qx)``.

    ``(q ln(1/q))^{-1/2} e^{-(ln q/2) w^2 + (1 + ln q) w} w^{-1/2} U_N(w)``
    with ``w = omega(-1/ln q, q^{-3/2} x)``.
    """
    p = as_point(x)
    lq = ctx.log_q
    lam = -1.0 / lq
    w = omega(lam, p.scale(ctx.q ** -1.5))
    if abs(w) <= min_omega:
        raise DomainError(f"|omega| = {abs(w):.4g} <= {min_omega}: x is not large enough")
    pref = cmath.exp(-0.5 * lq * w * w + (1.0 + lq) * w) / (math.sqrt(-ctx.q * lq) * cmath.sqrt(w))
    return pref * U_N_eval(w, lam, N)


def empirical_rho0(lam: float, radii=None, rel: float = 0.2) -> float:
    """Smallest radius on ``radii`` from which the N=0 saddle value stays
    within ``rel`` of the contour value (the validity radius, in units of lam)."""
    radii = radii if radii is not None else [1.5 ** k for k in range(1, 20)]
    good = None
    for r in sorted(radii, reverse=True):
        v, _ = u_saddle(lam, lam * r, 0)
        ref = u_contour(lam, lam * r).value
        if abs(v / ref - 1.0) <= rel:
            good = r
        else:
            break
    if good is None:
        raise ConvergenceError("no radius on the ladder meets the tolerance")
    return good
