"""
A brute-force check with the method of steps
=============================================

The delayed value y(qx) always sits behind the integration front, so
plain RK4 works once the history can be interpolated.  Comparing the
result with the power series of F is a check that shares no formulas
with the library's closed forms.
"""
import numpy as np

from pantoq import QContext, F
from pantoq.oracle import integrate_fde

ctx = QContext(0.5)
mu = 0.7

for h in (0.08, 0.04, 0.02):
    sol = integrate_fde(mu, 0.0, 10.0, h, ctx)
    k = int(round(0.08 / h))
    r = sol.radii[::k]
    err = np.max(np.abs(sol.values[::k] - [F(mu, x, ctx).value for x in r]))
    print(f"step {h:5.2f}  max error {err:.3e}  equation residual {sol.residual_max:.1e}")
