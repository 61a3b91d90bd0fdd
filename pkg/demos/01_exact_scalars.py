"""The coefficient ring: exact multivariate rational functions.

Every quantity in this package is a Scalar: a quotient of polynomials over
the rationals in base coordinates x1..xn, held in a canonical form so that
equality of values is equality of representations.  No floats anywhere.
"""

from fractions import Fraction

from courantcalc import Scalar, parse_scalar, random_polynomial

n = 2
x1 = Scalar.variable(n, 1)
x2 = Scalar.variable(n, 2)

print("== arithmetic is exact and canonical ==")
a = (x1 * x1 - x2 * x2) / (x1 - x2)
print(f"(x1^2 - x2^2)/(x1 - x2) simplifies to: {a}")
print(f"equal to x1 + x2 as values: {a == x1 + x2}")

q = Scalar.const(0, Fraction(1, 3)) + Scalar.const(0, Fraction(1, 6))
print(f"1/3 + 1/6 = {q}")

print()
print("== derivatives follow the quotient rule exactly ==")
g = (x1 + x2) / (x1 * x2 + Scalar.one(n))
print(f"g = {g}")
print(f"dg/dx1 = {g.partial(1)}")

print()
print("== the text syntax used by all input files ==")
s = parse_scalar("2*x1^2*x2 - 1/3", n)
print(f"parsed: {s}")
print(f"value at (2, 3): {s.evaluate([2, 3])}")

print()
print("== seeded random polynomials drive the test batteries ==")
r = random_polynomial(n, 2, seed=42)
print(f"seed 42: {r}")
print(f"same seed, same value: {random_polynomial(n, 2, seed=42) == r}")
