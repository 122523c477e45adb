"""
Walking F out to infinity
=========================

The entire solution F(mu; q, x) of y'(x) = q^mu y(qx) - y(x) is an easy
power series near the origin.  Far out on the right it is instead a sum
over mu_k = mu + k kappa i of terms x^{-mu_k} G(mu_k; q, 1/x).  This
script checks that the two agree and watches the k = 0 term take over.
"""
import cmath
import math

from pantoq import QContext, F
from pantoq.connection import ConnectionParams, connection_constant, connection_rhs
from pantoq.qcore import gamma

ctx = QContext(0.5)
mu = 0.3 + 0.1j
p = ConnectionParams(mu, ctx, K=4)

print(f"q = {ctx.q}, kappa = {ctx.kappa:.6f}, mu = {mu}")
print(f"{'x':>16} {'|F|':>12} {'rel. diff':>10}")
for x in (1.0, 2.0, 5.0, 2 * cmath.exp(1j * math.pi / 4), 20.0):
    f = F(mu, x, ctx).value
    r = connection_rhs(p, x).value
    print(f"{complex(x):>16.4g} {abs(f):12.6g} {abs(f - r) / abs(f):10.2e}")

# The leading term alone: F x^mu tends to C Gamma(mu).  The remaining
# terms are O(1/x) plus a periodic wobble of size e^{-pi kappa / 2}.
lead = connection_constant(mu, ctx) * gamma(mu)
print("\nx * (F x^mu / (C Gamma(mu)) - 1)")
for x in (10.0, 40.0, 160.0, 640.0):
    print(f"{x:8.0f} {abs(F(mu, x, ctx).value * x ** mu / lead - 1) * x:10.5f}")
