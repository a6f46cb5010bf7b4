"""
The b and c generating series
=============================

b = -T^-1 log(1 - c^-1 T), so exp(bT) is the geometric series in c^-1 T.
Solving back for c uses the Bernoulli operator D/(e^D - 1).
"""

from ntate.series import (
    b_series,
    bernoulli,
    c_from_b,
    c_from_b_check,
    exp_bT,
    one_form_check,
    series_weight,
    uniform_cumulants,
)

N = 6
b = b_series(N)
for k, coeff in enumerate(b.coeffs):
    print(f"[T^{k}] b = {coeff}")
print("weight of every term:", series_weight(b))

print("exp(bT):", [str(a) for a in exp_bT(N).coeffs])

# c = b^-1 B(-bT) with the plus sign; flipping the sign gives -c.
print("plus sign: ", [str(a) for a in c_from_b(N, +1).coeffs])
print("minus sign:", [str(a) for a in c_from_b(N, -1).coeffs])
print(c_from_b_check(16, +1), c_from_b_check(16, -1))

# d(bT) and -d log(1 - c^-1 T) agree.
print("one-form identity to order 32:", one_form_check(32))

# Bernoulli numbers and the cumulants of the uniform distribution on [0, 1].
for k in range(1, 9):
    print(k, bernoulli(k), uniform_cumulants(k), bernoulli(k, "plus") / k)
