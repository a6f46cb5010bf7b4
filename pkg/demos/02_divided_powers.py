"""
Divided powers and their rationalization
========================================

b_i * b_k = C(i+k, i) b_{i+k}. Over Q the symbol b_k becomes b^k / k!.
"""

from ntate import DividedPower, dp_rationalize
from ntate.divided_power import commutator_D_M

b = DividedPower.basis

print("b_1 * b_1 =", b(1) * b(1))
print("b_2 * b_3 =", b(2) * b(3))

# Powers of b_1 pick up factorials.
power = DividedPower.one()
for k in range(1, 7):
    power = power * b(1)
    print(f"b_1^{k} = {power}")

# Rationalizing is a ring map to Q[b].
x = DividedPower({0: 1, 2: 3})
y = DividedPower({1: -1, 4: 2})
print(dp_rationalize(x * y))
print(dp_rationalize(x) * dp_rationalize(y))

# On Q[b], differentiation and multiplication by b commute up to the identity.
p = dp_rationalize(b(5) + b(2))
print("[D, M] p == p:", commutator_D_M(p) == p)
