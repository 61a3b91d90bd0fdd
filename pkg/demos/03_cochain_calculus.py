"""The graded cochain algebra and its Cartan calculus.

Cochains are lazy expression DAGs evaluated through the component formulas:
products are signed shuffle sums, the differential combines anchor
derivatives with bracket insertions, and interior products shift arguments
into the slots.  Equality is checked exactly on battery tuples.
"""

from courantcalc import Battery, Scalar, build_standard
from courantcalc.cochain import (
    cartan_suite,
    differential,
    equal_combinations,
    evaluate,
    generator_cochains,
    interior_e,
    interior_f,
    mul,
    scalar_leaf,
    section_leaf,
    vanishes,
)

alg = build_standard(2)
battery = Battery(alg)
x1 = Scalar.variable(2, 1)

print("== the differential of a function acts through the anchor ==")
f = x1 * x1 * Scalar.variable(2, 2)
w = differential(scalar_leaf(alg, f))
sigma = battery.randoms[0]
print(f"(d f)(sigma) = {evaluate(w, 0, (sigma,))}")
print(f"anchor derivative  = {alg.anchor_apply(sigma, f)}")

print()
print("== the differential squares to zero, exactly ==")
for i, w in enumerate(generator_cochains(alg, battery)[:6]):
    res = vanishes(differential(differential(w)), battery, reduced=True)
    print(f"generator {i} (degree {w.degree}): d(dw) == 0 is {bool(res)}")

print()
print("== a sample commutation relation ==")
e1, e2 = alg.frame[0].scale(x1), alg.frame[3]
w = mul(section_leaf(alg, alg.frame[1]), section_leaf(alg, alg.frame[2]))
lhs = [(1, interior_e(e1, interior_e(e2, w))),
       (1, interior_e(e2, interior_e(e1, w)))]
rhs = [(-1, interior_f(alg.pairing(e1, e2), w))]
print("anticommutator of two contractions equals minus the contraction "
      f"with the pairing: {bool(equal_combinations(lhs, rhs, battery))}")

print()
print("== the full suite ==")
print(cartan_suite(alg, battery).render())
