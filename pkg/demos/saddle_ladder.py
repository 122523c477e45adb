"""
How far out the saddle expansion of h becomes useful
====================================================

For large x, h follows a Lambert-W driven expansion in 1/w with
w = omega(-1/ln q, q^{-3/2} x).  Since w grows only like log x, each
doubling of x buys little.  The relative error against the Hankel
quadrature falls steadily but slowly.
"""
from pantoq import QContext
from pantoq.asymptotics import h_asymptotic, omega
from pantoq.contour import h0

ctx = QContext(0.5)
lam = -1 / ctx.log_q

print(f"{'|x|':>6} {'|w|':>6}  " + "  ".join(f"N={N}" + " " * 5 for N in range(4)))
for k in range(6):
    x = 25.0 * 2 ** k
    w = abs(omega(lam, x * ctx.q ** -1.5))
    ref = h0(x, None, ctx).value
    errs = [abs(h_asymptotic(x, N, ctx, min_omega=0) / ref - 1) for N in range(4)]
    print(f"{x:6.0f} {w:6.2f}  " + "  ".join(f"{e:.2e}" for e in errs))
