"""Reference values computed once with mpmath and frozen here.

F        : 50-digit partial sums of sum (q^mu; q)_n (-x)^n / n!
qpoch    : 50-digit truncated products
theta    : mpmath.nsum of sum_Z q^{n(n-1)/2} x^n
f0       : mpmath.nsum of sum q^{n(n-1)/2} x^n / n!
u        : 40-digit keyhole quadrature of int e^{xt + lam/2 log^2 t} dt,
           circle radius 20/|x|, checked against radius 40/|x|
h        : u(lam, q^{-3/2} x) / (i sqrt(2 pi q ln(1/q))), lam = -1/ln q,
           with u as above
"""

F_REF = [
    (0.5, 0.5, (1+0j), (0.7807485776210721+0j)),
    ((0.2+0.3j), 0.5, (2+1j), (0.8440189546848406-0.29436221829052794j)),
    (0.7, 0.5, (10+0j), (0.2322742296567877+0j)),
    (1.2, 0.3, (5+0j), (0.11186144225802264+0j)),
    ((0.3+0.1j), 0.3, 2j, (0.7349430854062851-0.4749520344109024j)),
    ((-0.4+0.2j), 0.5, (-7+0j), (-72.22797935396734+13.77602697144903j)),
    ((0.5-0.4j), 0.7, (3-3j), (0.666277606313671+0.4238149172255658j)),
    (2.5, 0.9, (-2+0j), (1.6517383549611224+0j)),
]

QPOCH_REF = [
    ((0.5+0j), 0.5, (0.2887880950866024+0j)),
    ((0.3+0.4j), 0.3, (0.5434958676805978-0.46035503108769416j)),
    ((2+0j), 0.7, (0.00037181706284169336+0j)),
    (-1.5j, 0.9, (56.123803066262646+1.6896485244605945j)),
]

THETA_REF = [
    (0.5, (0.7+0j), (3.0109890050016013+0j)),
    (0.3, (1+2j), (0.8548365620777195+3.003972138983268j)),
    (0.7, (-3+0.5j), (-3.1231150189656955e-05-0.00016537215176204545j)),
    (0.9, 0.2j, (-2.1651992349420697+5.884162993358602j)),
]

F0_REF = [
    (0.5, (2+0j), (4.177346474807434+0j)),
    (0.5, (-6+0j), (0.28241995894563754+0j)),
    (0.3, (4+3j), (5.835838810170567+7.136694132474455j)),
]

U_REF = [
    (1.0, (100+0j), 357.00509573338655j),
    (1.0, (98.00665778412416+19.866933079506122j), (-170.76446189119594+307.5408186150124j)),
    (0.5, (30+0j), 3.455272338242109j),
    (2.0, (10+5j), (-22.420663981094922+15.396499847534551j)),
    (1.4426950408889634, (200+0j), 67207.00934815733j),
]

H_REF = [
    (0.5, 2.0, 4.177346302174999),
    (0.5, 50.0, 10632.18511360805),
    (0.5, 100.0, 222730.11078607614),
    (0.5, 200.0, 8004264.167755768),
]
