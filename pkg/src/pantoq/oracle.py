"""Brute-force checks that do not rely on any closed form.

:func:`integrate_fde` marches ``y'(x) = a y(qx) - b y(x)`` out along a ray
from the origin by the method of steps: classical RK4, with the delayed
value ``y(qx)`` read off a cubic Hermite interpolant of the history.
Since ``q|x| < |x|`` the delayed point is always behind the front once the
first few steps are seeded.

:func:`derivative_tower` checks the q-binomial formula for ``y^{(n)}``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .contour import f0
from .qcore import DomainError, QContext, qbinomial, q_power
from .series import F, F_coefficients


@dataclass(frozen=True)
class RaySolution:
    """Samples of a solution along ``x = r e^{id}``.

    ``radii`` is the uniform grid ``0, h, 2h, ...``; ``derivs`` holds
    ``dy/dr`` there, as given by the equation itself.
    """
    angle: float
    step: float
    radii: np.ndarray
    values: np.ndarray
    derivs: np.ndarray
    residual_max: float

    @property
    def samples(self) -> list[tuple[float, complex]]:
        return list(zip(self.radii.tolist(), self.values.tolist()))

    @property
    def points(self) -> np.ndarray:
        return self.radii * np.exp(1j * self.angle)

    def __call__(self, r):
        """Hermite interpolant of the stored samples at radius ``r``."""
        return _hermite(self.radii, self.values, self.derivs, self.step, r)


def _hermite(radii, values, derivs, h, r):
    r = np.asarray(r, dtype=float)
    k = np.clip(np.floor(r / h).astype(int), 0, len(radii) - 2)
    t = (r - radii[k]) / h
    t2, t3 = t * t, t * t * t
    h00 = 2 * t3 - 3 * t2 + 1
    h10 = t3 - 2 * t2 + t
    h01 = -2 * t3 + 3 * t2
    h11 = t3 - t2
    return (h00 * values[k] + h10 * h * derivs[k]
            + h01 * values[k + 1] + h11 * h * derivs[k + 1])


def _hermite_slope(radii, values, derivs, h, r):
    r = np.asarray(r, dtype=float)
    k = np.clip(np.floor(r / h).astype(int), 0, len(radii) - 2)
    t = (r - radii[k]) / h
    t2 = t * t
    d00 = (6 * t2 - 6 * t) / h
    d10 = 3 * t2 - 4 * t + 1
    d01 = (-6 * t2 + 6 * t) / h
    d11 = 3 * t2 - 2 * t
    return d00 * values[k] + d10 * derivs[k] + d01 * values[k + 1] + d11 * derivs[k + 1]


def _march(a: complex, b: float, d: float, r_max: float, h: float, q: float,
           seed, y0: complex) -> RaySolution:
    if not 0 < q < 1:
        raise DomainError("the method of steps needs 0 < q < 1")
    if h <= 0 or h > r_max / 100:
        raise DomainError("interpolation gap: step must lie in (0, r_max/100]")
    n = int(round(r_max / h))
    h = r_max / n
    e = cmath.exp(1j * d)
    radii = np.arange(n + 1) * h
    values = np.zeros(n + 1, dtype=complex)
    derivs = np.zeros(n + 1, dtype=complex)

    # seed until q(r + h) falls behind the front
    n_seed = min(n, max(1, int(math.ceil(q / (1.0 - q))) + 1))
    values[0] = y0
    for k in range(1, n_seed + 1):
        values[k] = seed(radii[k] * e)
    # derivatives at seeded nodes; the delayed values are seeded too
    for k in range(n_seed + 1):
        delayed = seed(q * radii[k] * e) if k else y0
        derivs[k] = e * (a * delayed - b * values[k])

    def delayed(r):
        return _hermite(radii, values, derivs, h, q * r)

    def rhs(r, y):
        return e * (a * delayed(r) - b * y)

    for k in range(n_seed, n):
        r, y = radii[k], values[k]
        k1 = derivs[k]
        k2 = rhs(r + h / 2, y + h / 2 * k1)
        k3 = rhs(r + h / 2, y + h / 2 * k2)
        k4 = rhs(r + h, y + h * k3)
        values[k + 1] = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        derivs[k + 1] = rhs(r + h, values[k + 1])

    mid = radii[:-1] + h / 2
    slope = _hermite_slope(radii, values, derivs, h, mid)
    eq = e * (a * _hermite(radii, values, derivs, h, q * mid)
              - b * _hermite(radii, values, derivs, h, mid))
    scale = np.maximum(1.0, np.abs(values[:-1]))
    residual = float(np.max(np.abs(slope - eq) / scale))
    return RaySolution(d, h, radii, values, derivs, residual)


def integrate_fde(mu: complex, d: float, r_max: float, step: float, ctx: QContext,
                  y0: complex = 1.0) -> RaySolution:
    """Solve ``y' = q^mu y(qx) - y`` along ``arg x = d`` from ``y(0) = y0``.

    The first node or two come from the power series of F (scaled by ``y0``);
    everything after is integrated.
    """
    alpha = q_power(mu, ctx)
    y0 = complex(y0)
    return _march(alpha, 1.0, d, r_max, step, ctx.q,
                  lambda x: y0 * F(mu, x, ctx).value, y0)


def integrate_fde_b0(d: float, r_max: float, step: float, ctx: QContext) -> RaySolution:
    """Solve ``y'(x) = y(qx)``, ``y(0) = 1`` along ``arg x = d``."""
    return _march(1.0, 0.0, d, r_max, step, ctx.q, lambda x: f0(x, ctx).value, 1.0 + 0j)


def _termwise(coeffs: np.ndarray, x: complex, n: int) -> complex:
    """n-th derivative of the polynomial with the given coefficients."""
    k = np.arange(n, len(coeffs))
    fall = np.ones(len(k))
    for j in range(n):
        fall *= k - j
    return complex(np.polyval((coeffs[n:] * fall)[::-1], x))


def derivative_tower(mu: complex, x: complex, n: int, ctx: QContext) -> float:
    """Residual of ``y^(n)(x) = sum_k (-1)^{n-k} alpha^k q^{k(k-1)/2} [n, k]_q y(q^k x)``.

    Both sides use the same termwise-differentiated Taylor polynomial of F.
    """
    if not 0 <= n <= 8:
        raise DomainError("n must lie in 0..8")
    x = complex(x)
    q = ctx.q
    M = int(3 * abs(x) * math.e) + 60
    c = F_coefficients(mu, M, ctx)
    alpha = q_power(mu, ctx)
    lhs = _termwise(c, x, n)
    rhs = 0j
    for k in range(n + 1):
        rhs += ((-1) ** (n - k) * alpha ** k * q ** (k * (k - 1) / 2)
                * qbinomial(n, k, ctx) * _termwise(c, q ** k * x, 0))
    return abs(lhs - rhs) / max(1.0, abs(lhs))
