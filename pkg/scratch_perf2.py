import time
from itertools import combinations

from cremona.fields import GF
from cremona.groebner import (
    Ideal,
    groebner_basis,
    hilbert_data,
    ideal_quotient,
    ideal_sum,
    projective_emptiness,
)
from cremona.linalg import det_laplace, max_minors
from cremona.poly import Poly, PolyMatrix

# Ex 2.6 matrices (5x4 over P^5): general then special
CONIC_GENERAL = [
    [[0, 1, 0, 0, 1, 0], [-1, 1, 0, 0, 0, 1], [-1, 0, -1, 0, 0, 1], [-1, 0, 0, 1, 1, 0]],
    [[1, 0, -1, 0, 0, 0], [1, 0, -1, 0, 0, 0], [0, 0, 1, -1, -1, 0], [0, -1, 1, 0, 0, 0]],
    [[0, 0, 0, 0, 1, 1], [1, 0, 0, 0, -1, 1], [-1, 1, 0, 0, 0, 0], [1, 0, -1, 0, 0, 1]],
    [[-1, 0, 0, -1, 0, 0], [0, 1, 0, 1, 0, 0], [0, 1, 0, 0, 1, 0], [0, 0, -1, 0, 1, 0]],
    [[0, 1, 0, 1, 0, 1], [0, 0, 0, 1, 0, 1], [0, 0, 0, 1, 0, -1], [0, 1, 0, 0, 0, -1]],
]
CONIC_SPECIAL = [
    [[0, 1, 1, 0, 1, 1], [-1, 1, 0, 0, 0, -1], [-1, 0, -1, 0, 0, 1], [-1, 0, 0, 1, 1, 0]],
    [[1, 0, -1, 0, 0, 0], [1, 0, -1, 1, 0, 0], [0, 0, 1, -1, -1, 0], [0, -1, 1, 0, 0, -1]],
    [[0, 1, 0, 1, 1, 1], [1, 0, 0, 0, -1, 1], [-1, 1, 0, 1, 0, 0], [1, 1, -1, 0, 0, 1]],
    [[-1, 0, 0, -1, 0, 0], [0, 1, 0, 1, 0, 0], [0, 1, 0, 0, 1, -1], [0, 0, -1, 0, 1, 0]],
    [[0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]],
]


def flip_B(A_coeffs, field, m, n):
    # b_{j,k} = sum_i coeff(x_k in a_{i,j}) y_i ; B is n x (m+1) in n+1 vars
    entries = []
    for j in range(n):
        row = []
        for k in range(m + 1):
            coeffs = [A_coeffs[i][j][k] for i in range(n + 1)]
            row.append(Poly.linear_form(field, n + 1, coeffs))
        entries.append(row)
    return PolyMatrix(entries)


def stratum_ideal(B, size):
    out = []
    for ri in combinations(range(B.rows), size):
        for ci in combinations(range(B.cols), size):
            d = det_laplace([[B.entries[i][j] for j in ci] for i in ri])
            if not d.is_zero():
                out.append(d)
    return out


field = GF(101)

for name, mat in (("general", CONIC_GENERAL), ("special", CONIC_SPECIAL)):
    B = flip_B(mat, field, 5, 4)
    t0 = time.time()
    gens = stratum_ideal(B, 4)
    I = Ideal(field, 5, gens)
    G = groebner_basis(I)
    hd = hilbert_data(G)
    print(f"conic {name} rank<=3: {time.time()-t0:.2f}s gb size {len(G.basis)} {hd}")
    t0 = time.time()
    gens2 = stratum_ideal(B, 3)
    I2 = Ideal(field, 5, gens2)
    G2 = groebner_basis(I2)
    hd2 = hilbert_data(G2)
    print(f"conic {name} rank<=2: {time.time()-t0:.2f}s {hd2} empty={projective_emptiness(G2)}")

# Ex 2.5 matrices probe (6x5 over P^5)
QUINTO_SOLID = [
    [[0, -2, 0, 0, -2, 0], [-1, -2, 0, 0, 0, 1], [-1, 0, -1, 0, 0, 1], [2, 0, 0, 1, -2, 0], [0, 0, -2, 0, 2, 0]],
    [[1, 0, 2, 0, 0, 0], [-2, 0, 2, 0, 0, 0], [0, 0, 1, -1, -1, 0], [0, -1, 1, 0, 0, 0], [0, 0, 0, -2, 2, 0]],
    [[0, 0, 0, 0, 1, 1], [1, 0, 0, 0, -1, 1], [2, 1, 0, 0, 0, 0], [1, 0, -1, 0, 0, -2], [0, 1, 0, 0, 0, 1]],
    [[-1, 0, 0, -1, 0, 0], [0, -2, 0, 1, 0, 0], [0, -2, 0, 0, 1, 0], [0, 0, -1, 0, 1, 0], [0, -1, 0, -1, 0, -2]],
    [[0, 1, 0, 1, 0, -2], [0, 0, 0, 1, 0, -2], [0, 0, 0, -2, 0, 2], [0, 1, 0, 0, 0, 2], [-1, 0, 1, 0, 0, 0]],
    [[0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1], [0, 0, 0, 0, 1, 0]],
]

B5 = flip_B(QUINTO_SOLID, field, 5, 5)
t0 = time.time()
gens = stratum_ideal(B5, 4)
I = Ideal(field, 6, gens)
G = groebner_basis(I)
hd = hilbert_data(G)
print(f"quinto solid rank<=3: {time.time()-t0:.2f}s gb size {len(G.basis)} {hd}")

# §4 pipeline: Segre in P^5, quadric through plane, residuation
import random

rng = random.Random(42)
n6 = 6
xv = [Poly.variable(field, n6, i) for i in range(n6)]
segre2x3 = PolyMatrix([[xv[0], xv[1], xv[2]], [xv[3], xv[4], xv[5]]])
Q0 = xv[0] * xv[4] - xv[1] * xv[3]
Q1 = xv[0] * xv[5] - xv[2] * xv[3]
Q2 = xv[1] * xv[5] - xv[2] * xv[4]
I_M = Ideal(field, 6, [Q0, Q1, Q2])
L = [Poly.linear_form(field, 6, [rng.randrange(101) for _ in range(6)]) for _ in range(3)]
Q3 = xv[0] * L[0] + xv[1] * L[1] + xv[2] * L[2]
I_pi = Ideal(field, 6, [xv[0], xv[1], xv[2]])
t0 = time.time()
IX = ideal_quotient(ideal_sum(I_M, Ideal(field, 6, [Q3])), I_pi)
t1 = time.time()
GX = groebner_basis(IX)
hdX = hilbert_data(GX)
print(f"del pezzo quotient: {t1-t0:.2f}s gb {time.time()-t1:.2f}s gens {[g.degree for g in IX.gens]} {hdX}")
