"""Building Courant algebroids and verifying their axioms exactly.

An algebroid is frame data: a symmetric pairing matrix, an anchor matrix and
bracket structure functions.  The verifier checks the Jacobi identity in
Leibniz form, pairing compatibility, the symmetric part of the bracket, and
the derived anchor identities on a deterministic battery of sections, and
reports exact residuals with the first counterexample on failure.
"""

from courantcalc import (
    Battery,
    build_quadratic_lie_algebra,
    build_standard,
    verify_axioms,
)

print("== the standard structure on tangent + cotangent frames ==")
alg = build_standard(2)
report = verify_axioms(alg, Battery(alg))
print(report.render())

print()
print("== a quadratic Lie algebra is the point case ==")
eps = [[[0] * 3 for _ in range(3)] for _ in range(3)]
for (i, j, k, s) in [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1),
                     (1, 0, 2, -1), (2, 1, 0, -1), (0, 2, 1, -1)]:
    eps[i][j][k] = s
eye = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
su2 = build_quadratic_lie_algebra(eps, eye)
print(verify_axioms(su2, Battery(su2)).render())

print()
print("== a non-invariant form is caught with an exact witness ==")
bad = build_quadratic_lie_algebra(eps, [[1, 0, 0], [0, 1, 0], [0, 0, 2]])
report = verify_axioms(bad, Battery(bad))
print(report.render())
failed = report.failed_checks()[0]
print(f"\nfirst counterexample: {failed.witness} with residual "
      f"{failed.residual}")
