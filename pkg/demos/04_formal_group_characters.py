"""
Characters of formal group laws
===============================

A character chi turns the group law into multiplication:
chi(F(T0, T1)) = chi(T0) chi(T1).
"""

from fractions import Fraction

from ntate.series import FormalGroupLaw, PowerSeries, exp_character, fgl_character_check

N = 10
additive = FormalGroupLaw.additive(N)
multiplicative = FormalGroupLaw.multiplicative(N)

one_plus_T = PowerSeries([1, 1], N)
print("multiplicative, 1+T:", fgl_character_check(multiplicative, one_plus_T, N))
print("additive, exp(T):   ", fgl_character_check(additive, exp_character(N), N))
print("additive, 1+T:      ", fgl_character_check(additive, one_plus_T, N))

# Any rational power of 1+T is a character of the multiplicative law.
chi = (one_plus_T.log() * Fraction(1, 3)).exp()
print("(1+T)^(1/3):         ", fgl_character_check(multiplicative, chi, N))

for law in (additive, multiplicative):
    print(law.to_json(), law.is_unital(), law.is_commutative(), law.is_associative())
