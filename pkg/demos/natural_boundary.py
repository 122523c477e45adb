"""
Where the Psi series stops converging
=====================================

Psi(u, v, z) = sum_n Gamma(u + 2 i v n / pi) z^{2 i n / pi} summed over
all integers n.  Stirling gives ln|Gamma(u + i t)| ~ -pi |t| / 2, so the
coefficients fall off like e^{-|v| n}.  The series therefore lives on
e^{-|v|} < |z| < e^{|v|}, and the partial sums show it.
"""
import math

import numpy as np

from pantoq import QContext
from pantoq.series import Psi, psi_coefficient_slope, psi_partial_sums

ctx = QContext(0.1)
u = 0.5
v = ctx.kappa * math.pi / 2

# fitted decay of ln|Gamma(u + 2ivn/pi)| between n = 20 and 40
slope = psi_coefficient_slope(u, v, 20, 40)
print(f"v = {v:.4f}, fitted slope {slope:.4f}")

edge = math.exp(v)
for frac in (0.5, 0.9, 1.0, 1.1):
    s = psi_partial_sums(u, v, frac * edge, 40)
    jumps = np.abs(np.diff(s))
    r = Psi(u, v, frac * edge, None, strict=False)
    print(f"|z| = {frac:.1f} e^v  last jump {jumps[-1]:9.2e}  converged={r.converged}")
