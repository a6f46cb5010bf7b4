"""
Polylogarithms and divided moments
==================================

li_s(x) = sum e^{nx}/n^s on x < 0. Convolving li0 with u^(s-1)/Gamma(s)
integrates it s times, and at x = 0 the result is zeta(s).
"""

import math

import numpy as np

from ntate.polylog import QuadratureSpec, gamma_convolve, li0, li1, li_s, s1_expansion_check, zeta_neg

xs = np.linspace(-4, -0.25, 6)
for s in (0, 1, 2, 4):
    print(f"li_{s}:", np.round([li_s(s, x) for x in xs], 6))

print("li_2(0) - pi^2/6 =", li_s(2, 0.0) - math.pi**2 / 6)

spec = QuadratureSpec(abs_tol=1e-10, rel_tol=1e-10)
r = gamma_convolve(4, "d_li1", 0.0, spec)
print(f"(gamma_4 * d li1)(0) = {r.value!r} +/- {r.error:.1e}, zeta(4) = {math.pi**4 / 90!r}")
print("a single integration of li0 at -1:", gamma_convolve(1, "li0", -1.0).value, li1(-1.0))
print("li0(-ln 2) =", li0(-math.log(2)))

# Near s = 1 the constant term is log|x/(e^x - 1)|, whose Taylor coefficients are zeta(1-k)/k!.
print([str(zeta_neg(k)) for k in range(1, 9)])
for x in (-1.0, -0.5, -0.1):
    print(s1_expansion_check(x, 12).to_json())
