"""
Blackbody radiance and the T^4 law
==================================

Integrating Planck's spectral radiance gives 12 h kappa^4 zeta(4) T^4 / c^2,
with kappa = k_B / h.
"""

import math

from ntate.laurent import lp_parse
from ntate.radiation import (
    GaussianSpec,
    PhysConstants,
    pairing_eval,
    planck_table,
    stefan_boltzmann,
    stefan_boltzmann_sigma,
)

consts = PhysConstants.from_config()
print(f"kappa = {consts.kappa:.6e} Hz/K")

for T in (300.0, 5772.0):
    r = stefan_boltzmann(T, consts)
    print(T, r.quadrature, r.closed_form, r.relative_error)

sun = stefan_boltzmann(5772.0, consts)
print("pi * radiance / (sigma T^4) =", math.pi * sun.quadrature / (stefan_boltzmann_sigma(consts) * 5772.0**4))

natural = stefan_boltzmann(1.0, consts.with_units("natural"))
print("natural units:", natural.closed_form, 12 * consts.h * consts.kappa**4 * math.pi**4 / 90)

for nu, value in planck_table(5772.0, consts, n=8):
    print(f"{nu:.3e}  {value:.3e}")

# Pairing p(c) dc against a Gaussian after c = e^-eps.
phi = GaussianSpec.single(amplitude=1 / math.sqrt(math.pi))
print(pairing_eval(phi, lp_parse("c^-1")).value)
print(pairing_eval(GaussianSpec.single(), lp_parse("1")).value, -math.sqrt(math.pi) * math.exp(0.25))
