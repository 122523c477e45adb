"""
Solutions of y'(x) = y(qx)
==========================

Without the damping term the entire solution is
f(x) = sum q^{n(n-1)/2} x^n / n!.  A Hankel integral gives another
solution h, and copies of h on the sheets x e^{2 pi i n} add back up
to f.  The copies die off like a Gaussian in n.
"""
from pantoq import QContext, SurfacePoint
from pantoq.contour import f0, f0_contour, g0_line, h0, winding_sum

ctx = QContext(0.5)
x = SurfacePoint.from_complex(2.0)

print(f"f(2)            {f0(2.0, ctx).value.real:.15f}")
print(f"loop integral   {f0_contour(2.0, None, ctx).value.real:.15f}")

# f = g_- - g, the two line integrals above and below the Gamma poles
g = g0_line(x, 1, 0.25, ctx).value
gm = g0_line(x, -1, 0.25, ctx).value
print(f"g_- - g         {(gm - g).real:.15f}")

for n in range(4):
    print(f"|h(x e^{{2 pi i {n}}})| = {abs(h0(x.wind(n), None, ctx).value):.3e}")

for n_max in (0, 1, 2, 3):
    s = winding_sum(x, n_max, ctx).value
    print(f"sum over |n| <= {n_max}: error {abs(s - f0(2.0, ctx).value):.2e}")
