import random

import pytest

from cremona.errors import ArityError, BudgetExceeded, ShapeError
from cremona.fields import GF, QQ
from cremona.poly import (
    Poly,
    PolyMatrix,
    ProjPoint,
    enumerate_projective_points,
    grevlex_key,
    monomials_of_degree,
    projective_count,
)

F101 = GF(101)


def x(i, n=6, field=F101):
    return Poly.variable(field, n, i)


def test_poly_arithmetic_round_trip():
    a = x(0) * x(4) - x(1) * x(3)
    b = x(2) * x(5)
    assert (a + b) - b == a
    assert (a * b).degree == 4
    assert (a - a).is_zero()
    assert a.is_homogeneous()


def test_grevlex_key_order():
    # x1^2 beats x0*x2 in grevlex
    assert grevlex_key((0, 2, 0, 0)) > grevlex_key((1, 0, 1, 0))
    assert grevlex_key((3, 0)) > grevlex_key((2, 1))


def test_monomials_of_degree_counts():
    assert len(monomials_of_degree(5, 4)) == 70
    assert len(monomials_of_degree(3, 2)) == 6


def test_evaluate_example():
    # x0*x4 - x1*x3 at (1:0:0:0:1:0) -> 1
    f = x(0) * x(4) - x(1) * x(3)
    p = ProjPoint(F101, [1, 0, 0, 0, 1, 0])
    assert f.evaluate(p) == 1


def test_evaluate_homogeneous_rescaling():
    rng = random.Random(3)
    f = x(0) * x(4) - x(1) * x(3) + x(2) * x(5)
    for _ in range(20):
        coords = [rng.randrange(101) for _ in range(6)]
        if all(c == 0 for c in coords):
            continue
        lam = rng.randrange(1, 101)
        v1 = f.evaluate(coords)
        v2 = f.evaluate([lam * c % 101 for c in coords])
        assert v2 == pow(lam, 2, 101) * v1 % 101
        assert (v1 == 0) == (v2 == 0)


def test_evaluate_zero_poly():
    z = Poly.zero(F101, 4)
    assert z.evaluate([1, 2, 3, 4]) == 0


def test_evaluate_arity_error():
    f = x(0)
    with pytest.raises(ArityError):
        f.evaluate([1, 2, 3])


def test_evaluate_over_extension():
    F9 = GF(3, 2)
    f = Poly.variable(GF(3), 2, 0) * Poly.variable(GF(3), 2, 0)
    u = (0, 1)
    val = f.evaluate([u, F9.one], field=F9)
    assert val == F9.mul(u, u)


def test_derivative():
    f = x(0) * x(0) * x(1)
    assert f.derivative(0) == (x(0) * x(1)).scale(2)
    assert f.derivative(2).is_zero()


def test_substitute_linear():
    # f(x0,x1) = x0*x1 under x0 -> t0+t1, x1 -> t0-t1 gives t0^2 - t1^2
    F = GF(101)
    f = Poly.variable(F, 2, 0) * Poly.variable(F, 2, 1)
    t0 = Poly.variable(F, 2, 0)
    t1 = Poly.variable(F, 2, 1)
    g = f.substitute([t0 + t1, t0 - t1])
    assert g == t0 * t0 - t1 * t1


def test_divexact():
    f = (x(0) + x(1)) * (x(2) + x(3)) * (x(0) - x(4))
    g = x(2) + x(3)
    assert f.divexact(g) == (x(0) + x(1)) * (x(0) - x(4))
    with pytest.raises(ValueError):
        (x(0) * x(1) + x(2) * x(2)).divexact(x(0))


def test_proj_point_normalization_canonical():
    p1 = ProjPoint(F101, [2, 4, 6])
    p2 = ProjPoint(F101, [1, 2, 3])
    assert p1 == p2
    assert p1.coords == p2.coords
    assert hash(p1) == hash(p2)
    p3 = ProjPoint(F101, [0, 0, 5])
    assert p3.coords == (0, 0, 1)


def test_proj_point_zero_rejected():
    with pytest.raises(ShapeError):
        ProjPoint(F101, [0, 0, 0])


def test_point_parse_and_str():
    p = ProjPoint.parse(F101, "0:0:0:0:1")
    assert p.coords == (0, 0, 0, 0, 1)
    assert str(p) == "(0:0:0:0:1)"
    with pytest.raises(ArityError):
        ProjPoint.parse(F101, "a:b")


def test_enumerate_p1_f2():
    F2 = GF(2)
    pts = list(enumerate_projective_points(1, F2))
    assert [p.coords for p in pts] == [(0, 1), (1, 0), (1, 1)]


def test_enumerate_counts():
    assert projective_count(4, 3) == 121
    assert len(list(enumerate_projective_points(4, GF(3)))) == 121
    F4 = GF(2, 2)
    pts = list(enumerate_projective_points(2, F4))
    assert len(pts) == 21
    assert len(set(pts)) == 21


def test_enumerate_budget():
    with pytest.raises(BudgetExceeded):
        list(enumerate_projective_points(4, GF(101), budget=1000))


def test_poly_matrix_linear_flag():
    A = PolyMatrix([[x(0), x(3)], [x(1), x(4)], [x(2), x(5)]])
    assert A.rows == 3 and A.cols == 2
    assert A.is_linear_forms()
    B = PolyMatrix([[x(0) * x(1)]])
    assert not B.is_linear_forms()


def test_poly_matrix_evaluate():
    A = PolyMatrix([[x(0), x(3)], [x(1), x(4)], [x(2), x(5)]])
    vals = A.evaluate_at(ProjPoint(F101, [1, 2, 3, 4, 5, 6]))
    assert vals == [[1, 4], [2, 5], [3, 6]]
