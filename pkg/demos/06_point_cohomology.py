"""Cohomology of the standard complex over a point.

Over a point the cochain spaces are finite-dimensional alternating powers
and the differential reduces to its bracket-insertion sum, so betti numbers
come from exact rational ranks.
"""

from courantcalc import PointComplex, build_quadratic_lie_algebra


def table(name, alg):
    pc = PointComplex(alg)
    print(f"== {name} ==")
    print("p  dim  rank_d  betti")
    for row in pc.table():
        print(f"{row['p']:<3}{row['dim']:<5}{row['rank_d']:<8}{row['betti']}")
    print()


eps = [[[0] * 3 for _ in range(3)] for _ in range(3)]
for (i, j, k, s) in [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1),
                     (1, 0, 2, -1), (2, 1, 0, -1), (0, 2, 1, -1)]:
    eps[i][j][k] = s
eye3 = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
table("su(2) with the standard invariant form",
      build_quadratic_lie_algebra(eps, eye3))

eye4 = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
zero4 = [[[0] * 4 for _ in range(4)] for _ in range(4)]
table("abelian rank 4 (everything survives)",
      build_quadratic_lie_algebra(zero4, eye4))

c4 = [[[0] * 4 for _ in range(4)] for _ in range(4)]
for i in range(3):
    for j in range(3):
        for k in range(3):
            c4[i][j][k] = eps[i][j][k]
table("su(2) plus a central line",
      build_quadratic_lie_algebra(c4, eye4))
