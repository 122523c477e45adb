"""Numerics for the pantograph equation ``y'(x) = a y(qx) + b y(x)``, ``0 < q < 1``.

Modules
-------
qcore
    q-Pochhammer symbols, Jacobi theta and its modular partner, Gamma,
    points of the Riemann surface of the logarithm.
series
    The entire solution F at the origin and its Dirichlet, Jackson and
    Laurent relatives.
connection
    F written through the canonical solutions at infinity; character
    functions and their Fourier expansions.
contour
    Integral representations evaluated by trapezoidal quadrature.
asymptotics
    Lambert W and the large-x expansion for ``y'(x) = y(qx)``.
oracle
    Method-of-steps integration and the derivative tower, used as
    independent checks.
"""
from .qcore import (
    ConvergenceError, DegenerateError, DomainError, QContext, SeriesValue,
    SurfacePoint, gamma, loggamma, qpoch, qpoch_inf, theta,
)
from .series import F, G, Phi, Psi
from .connection import ConnectionParams, connection_psi_rhs, connection_rhs
from .contour import ContourSpec, I_jordan, I_nu_ray, f0, g0_line, h0
from .asymptotics import h_asymptotic, lambert_w, omega, u_contour, u_saddle
from .oracle import RaySolution, derivative_tower, integrate_fde

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError", "DegenerateError", "DomainError", "QContext", "SeriesValue",
    "SurfacePoint", "gamma", "loggamma", "qpoch", "qpoch_inf", "theta",
    "F", "G", "Phi", "Psi", "ConnectionParams", "connection_psi_rhs", "connection_rhs",
    "ContourSpec", "I_jordan", "I_nu_ray", "f0", "g0_line", "h0",
    "h_asymptotic", "lambert_w", "omega", "u_contour", "u_saddle",
    "RaySolution", "derivative_tower", "integrate_fde",
]
