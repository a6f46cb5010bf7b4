"""
The boundary map on Z[c^±1]
===========================

Laurent polynomials in ``c`` with integer coefficients split into a
polynomial part and a strictly negative part. The boundary map forgets the
first and turns the second into divided powers.
"""

from ntate import DividedPower, LaurentPoly, boundary, exactness_check, lp_parse, rota_baxter_check

c = LaurentPoly.monomial(1)

# Non-negative powers die, c^-k lands on b_{k-1}.
for k in (3, 2, 1, 0, -1, -2, -3):
    print(f"boundary(c^{k}) = {boundary(c**k)}")

# Expressions can be typed directly.
p = lp_parse("3*c^-2 + c - 5*c^-4")
print(p, "->", boundary(p))

# Split p into its two summands.
print("polynomial part:", p.project("nonneg"))
print("negative part:  ", p.project("neg"))

# On a finite window the sequence is exact.
report = exactness_check(16)
print("exact on [-16, 16]:", report.passed)

# A deliberately broken boundary shows what a failure report looks like.
def broken(q):
    return DividedPower.zero() if q == c**-1 else boundary(q)

print(exactness_check(2, broken).dumps())

# Projecting onto negative degrees is a Rota-Baxter operator of weight -1.
x, y = c + c**-1, 2 * c**-3 - c**2
print("Rota-Baxter identity holds:", rota_baxter_check(x, y))
