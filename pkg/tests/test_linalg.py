import random

import numpy as np
import pytest

from cremona.errors import ShapeError
from cremona.fields import GF, QQ
from cremona.linalg import (
    det_bareiss,
    det_laplace,
    echelon,
    echelon_modp,
    kernel,
    max_minors,
    nullspace_modp,
    rank,
    rank_modp,
)
from cremona.poly import Poly, PolyMatrix

F101 = GF(101)


def x(i, n=6, field=F101):
    return Poly.variable(field, n, i)


def segre_matrix(field=F101):
    return PolyMatrix(
        [
            [Poly.variable(field, 6, 0), Poly.variable(field, 6, 3)],
            [Poly.variable(field, 6, 1), Poly.variable(field, 6, 4)],
            [Poly.variable(field, 6, 2), Poly.variable(field, 6, 5)],
        ]
    )


def test_max_minors_segre_hand_expanded():
    F0, F1, F2 = max_minors(segre_matrix())
    assert F0 == x(1) * x(5) - x(2) * x(4)
    assert F1 == -(x(0) * x(5) - x(2) * x(3))
    assert F2 == x(0) * x(4) - x(1) * x(3)


def test_max_minors_2x1():
    F = GF(101)
    M = PolyMatrix([[Poly.variable(F, 2, 0)], [Poly.variable(F, 2, 1)]])
    f0, f1 = max_minors(M)
    assert f0 == Poly.variable(F, 2, 1)
    assert f1 == -Poly.variable(F, 2, 0)


def test_max_minors_repeated_row():
    F = GF(101)
    a, b = Poly.variable(F, 3, 0), Poly.variable(F, 3, 1)
    M = PolyMatrix([[a, b], [a, b], [Poly.variable(F, 3, 2), b]])
    f0, f1, f2 = max_minors(M)
    # deleting row 2 leaves two identical rows
    assert f2.is_zero()
    assert not f0.is_zero() and not f1.is_zero()


def test_max_minors_shape_error():
    with pytest.raises(ShapeError):
        max_minors(segre_matrix().transpose())


def test_det_bareiss_equals_laplace_random():
    rng = random.Random(11)
    for field in (GF(101), GF(32003), QQ):
        for _ in range(100):
            entries = [
                [
                    Poly.linear_form(field, 3, [field.from_int(rng.randrange(-2, 3)) for _ in range(3)])
                    for _ in range(4)
                ]
                for _ in range(4)
            ]
            assert det_bareiss(entries) == det_laplace(entries)


def test_kernel_identity_and_zero():
    I4 = [[F101.one if i == j else F101.zero for j in range(4)] for i in range(4)]
    assert kernel(I4, F101) == []
    zero26 = [[F101.zero] * 6 for _ in range(2)]
    basis = kernel(zero26, F101)
    assert len(basis) == 6


def test_kernel_exactness_random():
    rng = random.Random(5)
    for field in (GF(101), GF(3, 2)):
        for _ in range(30):
            m = [[field.random(rng) for _ in range(5)] for _ in range(3)]
            basis = kernel(m, field)
            r = rank(m, field)
            assert len(basis) + r == 5
            for v in basis:
                for row in m:
                    acc = field.zero
                    for a, b in zip(row, v):
                        acc = field.add(acc, field.mul(a, b))
                    assert field.is_zero(acc)


def test_kernel_reduced_echelon_canonical():
    m = [[1, 2, 3, 4], [2, 4, 6, 8]]
    basis = kernel([[F101.from_int(v) for v in row] for row in m], F101)
    rref, pivots = echelon(basis, F101)
    assert rref == basis


def test_echelon_modp_matches_generic():
    rng = random.Random(9)
    for _ in range(25):
        rows = rng.randrange(1, 8)
        cols = rng.randrange(1, 8)
        m = [[rng.randrange(101) for _ in range(cols)] for _ in range(rows)]
        generic, piv1 = echelon([[v for v in row] for row in m], F101)
        dense, piv2 = echelon_modp(np.array(m), 101)
        assert piv1 == list(piv2)
        assert [[int(v) for v in row] for row in dense] == generic


def test_nullspace_modp():
    rng = random.Random(4)
    m = np.array([[rng.randrange(101) for _ in range(7)] for _ in range(3)])
    ns = nullspace_modp(m, 101)
    assert ns.shape[0] == 7 - rank_modp(m, 101)
    assert (m @ ns.T % 101 == 0).all()
