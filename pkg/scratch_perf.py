import time

from cremona.fields import GF
from cremona.groebner import (
    Grevlex,
    Ideal,
    groebner_basis,
    hilbert_data,
    projective_emptiness,
)
from cremona.linalg import det_laplace, max_minors
from cremona.poly import Poly, PolyMatrix

TODD_ROOM = [
    [[1, -2, 0, 0, 0], [1, 0, -2, 0, 0], [2, 0, 0, 0, 0], [0, -1, 0, 0, -1]],
    [[1, 0, 0, 1, 0], [0, -1, 1, 0, 0], [0, 1, 0, -2, 0], [0, 0, 2, -1, 0]],
    [[0, -1, 0, -1, 0], [0, 0, 0, -1, 2], [1, 0, 0, 0, -2], [-1, 1, 0, 0, 0]],
    [[0, -2, 0, 0, 1], [-1, 0, -1, 0, 0], [0, 0, 1, 1, 0], [0, 0, 1, 0, 1]],
    [[0, 0, 0, 1, 0], [0, 0, 0, 0, 1], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]],
]


def build(field):
    n = 5
    rows = []
    for row in TODD_ROOM:
        rows.append([Poly.linear_form(field, n, coeffs) for coeffs in row])
    return PolyMatrix(rows)


def main():
    for p in (101, 32003):
        field = GF(p)
        A = build(field)
        t0 = time.time()
        minors = max_minors(A)
        print(f"p={p} minors: {time.time()-t0:.2f}s degrees {[m.degree for m in minors]}")

        I = Ideal(field, 5, minors)
        t0 = time.time()
        G = groebner_basis(I)
        t1 = time.time()
        hd = hilbert_data(G)
        print(
            f"p={p} X1 GB: {t1-t0:.2f}s size={len(G.basis)} "
            f"maxdeg={max(g.degree for g in G.basis)} hilbert={hd} ({time.time()-t1:.2f}s)"
        )

        # rank <= 2 stratum of B: need B; quick inline construction
        from itertools import combinations

        m = 4
        nv = 5
        B_entries = [[None] * 5 for _ in range(4)]
        for j in range(4):
            for k in range(5):
                coeffs = [TODD_ROOM[i][j][k] for i in range(5)]
                B_entries[j][k] = Poly.linear_form(field, 5, coeffs)
        B = PolyMatrix(B_entries)
        t0 = time.time()
        minors3 = []
        for ri in combinations(range(4), 3):
            for ci in combinations(range(5), 3):
                d = det_laplace([[B.entries[i][j] for j in ci] for i in ri])
                if not d.is_zero():
                    minors3.append(d)
        t1 = time.time()
        Istrat = Ideal(field, 5, minors3)
        Gs = groebner_basis(Istrat)
        hds = hilbert_data(Gs)
        print(
            f"p={p} stratum GB: minors {t1-t0:.2f}s gb {time.time()-t1:.2f}s "
            f"size={len(Gs.basis)} hilbert={hds}"
        )

        # smoothness: I + 2x2 minors of jacobian
        t0 = time.time()
        jac = [[g.derivative(i) for i in range(5)] for g in minors]
        sing = list(minors)
        for ri in combinations(range(5), 2):
            for ci in combinations(range(5), 2):
                d = jac[ri[0]][ci[0]] * jac[ri[1]][ci[1]] - jac[ri[0]][ci[1]] * jac[ri[1]][ci[0]]
                if not d.is_zero():
                    sing.append(d)
        t1 = time.time()
        Ising = Ideal(field, 5, sing)
        Gsing = groebner_basis(Ising, degree_fill=True)
        t2 = time.time()
        print(
            f"p={p} sing GB(fill): minors {t1-t0:.2f}s gb {t2-t1:.2f}s size={len(Gsing.basis)} "
            f"empty={projective_emptiness(Gsing)}"
        )


if __name__ == "__main__":
    main()
