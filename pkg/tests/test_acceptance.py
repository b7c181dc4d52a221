"""Acceptance criteria, one test per criterion, exact equality everywhere.

Run with ``pytest tests/test_acceptance.py -v`` for one pass/fail line per
criterion; each test also prints an ACCEPTANCE line visible under -s.
"""

import random

import pytest

from conftest import get_instance, get_report
from cremona.config import RunConfig
from cremona.detmap import build_map, eval_map, fiber
from cremona.errors import BasePoint
from cremona.fields import GF
from cremona.gallery import SEGRE_P5, _matrix_from_data
from cremona.groebner import Ideal, groebner_basis, normal_form, spoly
from cremona.poly import Poly, PolyMatrix, ProjPoint, enumerate_projective_points
from cremona.relations import class_flip, relation_table

CFG = RunConfig(prime=101, seed=20240)


def _by_name(report):
    return {c.name: c for c in report.checks}


def _require(report, names):
    got = _by_name(report)
    for name in names:
        assert got[name].passed, f"{name}: expected {got[name].expected}, got {got[name].actual} ({got[name].note})"


def test_acceptance_01_todd_room_both_primes():
    for prime in (101, 32003):
        report = get_report("todd_room", prime)
        _require(
            report,
            [
                "x1_smooth",
                "sing_x2_singleton",
                "fiber_is_plane",
                "fiber_cuts_quartic",
                "fiber_quartic_smooth",
                "x1_hilbert",
                "h0_quartics",
                "h0_cubics",
                "esb_d2",
                "esb_r2",
            ],
        )
        got = _by_name(report)
        assert got["x1_smooth"].actual == "smooth"
        assert got["sing_x2_singleton"].actual["points"] == ["(0:0:0:0:1)"]
        assert got["sing_x2_singleton"].actual["certified_all_extensions"] is True
        assert got["fiber_is_plane"].actual["equations"] == [[0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]
        assert got["fiber_cuts_quartic"].actual == {"dim": 1, "degree": 4}
        assert got["fiber_quartic_smooth"].actual == "smooth"
        assert got["x1_hilbert"].actual == [2, 10, 11]
        assert got["h0_quartics"].actual == 5
        assert got["h0_cubics"].actual == 0
        assert got["esb_d2"].actual == 4
        assert got["esb_r2"].actual == 2
        assert report.passed
    print("ACCEPTANCE 1: PASS - Todd-Room over F_101 and F_32003")


def test_acceptance_02_segre_full_f3_enumeration():
    field = GF(3)
    mp = build_map(_matrix_from_data(SEGRE_P5, field))
    targets = 0
    for y in enumerate_projective_points(2, field):
        rep = fiber(mp, y, CFG, with_hilbert=True)
        assert rep.fiber_dim == 3
        hd = rep.intersection_hilbert
        assert (hd.projective_dimension, hd.degree) == (2, 2)
        targets += 1
    assert targets == 13
    print("ACCEPTANCE 2: PASS - every P^2(F_3) fiber is a P^3 cutting a quadric")


def test_acceptance_03_bordiga():
    report = get_report("bordiga_random")
    _require(report, ["x1_smooth", "ten_exceptional_planes", "probe_fiber_dim", "trisecant_length"])
    got = _by_name(report)
    assert got["ten_exceptional_planes"].actual == {"dimension": 0, "degree": 10}
    assert got["probe_fiber_dim"].actual == {"kind": "fiber_dim", "dim": 1}
    assert got["trisecant_length"].actual == {"dim": 0, "degree": 3}
    assert report.passed
    print("ACCEPTANCE 3: PASS - Bordiga trisecant fibers and degree-10 stratum")


def test_acceptance_04_quinto_both_matrices():
    plane = get_report("quinto_p5_plane")
    solid = get_report("quinto_p5_solid")
    gp, gs = _by_name(plane), _by_name(solid)
    assert gp["exceptional_fiber"].actual["equations"] == [
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
    ]
    assert gs["exceptional_fiber"].actual["equations"] == [
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
    ]
    for got in (gp, gs):
        assert got["unique_exceptional_target"].actual["points"] == ["(0:0:0:0:0:1)"]
        assert got["unique_exceptional_target"].actual["certified_all_extensions"] is True
        assert got["hilbert_burch"].actual == [3, 15, 26]
        assert got["secant_degree"].actual == 24
    assert plane.passed and solid.passed
    print("ACCEPTANCE 4: PASS - quinto-quintic exceptional fibers, unique target, (15, 26), 24")


def test_acceptance_05_conic_both_matrices():
    general = get_report("conic_p5_general")
    special = get_report("conic_p5_special")
    gg, gs = _by_name(general), _by_name(special)
    for got in (gg, gs):
        assert got["curve_stratum"].actual == {"dimension": 1, "degree": 20, "genus": 26}
    assert gg["no_rank2_point"].actual is True
    assert gs["curve_singular_point"].actual["points"] == ["(0:0:0:0:1)"]
    assert gs["solid_fiber"].actual["fiber_dim"] == 3
    assert gs["hyperplane_slice_plane_quartic"].actual is True
    assert general.passed and special.passed
    print("ACCEPTANCE 5: PASS - degree-20 genus-26 strata, singular point, plane quartic slice")


def test_acceptance_06_relation_table():
    rows = {row["name"]: row["value"] for row in relation_table()}
    assert rows["cremona_d2(n=4,d1=4,r1=2)"] == 4
    assert rows["cremona_d2(n=5,d1=5,r1=3)"] == 5
    assert rows["cremona_d2(n=6,d1=2,r1=2)"] == 4
    assert rows["hypersurface_d2(n=2,d1=2,r1=2)"] == 4
    assert rows["class_flip(4,4).E2"] == (15, -4)
    assert rows["class_flip(2,4).E2"] == (7, -4)
    assert rows["liaison(4,4,7)"] == 9
    assert rows["liaison(5,5,12)"] == 13
    assert rows["blowup_quartic(3,8,3)"] == 12
    assert (2, 7) in rows["square_plus_t(11)"]
    assert (2, 6) in rows["square_plus_t(10)"]
    print("ACCEPTANCE 6: PASS - relation table exact")


def test_acceptance_07_section4_pipeline():
    report = get_report("del_pezzo_cubic")
    _require(
        report,
        [
            "del_pezzo_profile",
            "del_pezzo_smooth",
            "cubic_smooth",
            "ruling_planes_at_most_two",
            "forced_plane_instance",
            "resolution_deg9",
        ],
    )
    got = _by_name(report)
    assert got["del_pezzo_profile"].actual == {"gens_degree_2": 5, "dimension": 2, "degree": 5}
    assert got["del_pezzo_smooth"].actual == "smooth"
    assert got["cubic_smooth"].actual == "smooth"
    assert got["resolution_deg9"].actual == [9, 8]
    assert report.passed
    print("ACCEPTANCE 7: PASS - del Pezzo quintic, smooth cubic, ruling planes, (9, 8)")


def test_acceptance_08_section5_pipeline():
    report = get_report("semple_tyrrell")
    _require(
        report,
        ["octic_profile", "h0_quadrics", "esb_type_24", "fibers_on_cone", "cone_image_dim"],
    )
    got = _by_name(report)
    assert got["octic_profile"].actual == {"gens_degree_2": 7, "dimension": 2, "degree": 8}
    assert got["h0_quadrics"].actual == 7
    assert got["esb_type_24"].actual == 4
    assert got["cone_image_dim"].actual == 2
    assert report.passed
    print("ACCEPTANCE 8: PASS - octic surface, h0 = 7, type (2,4), cone contraction")


def test_acceptance_09_section6_pipeline():
    report = get_report("p7_threefold")
    _require(
        report,
        [
            "threefold_profile",
            "h0_quadrics",
            "general_fiber_line",
            "secant_length_two",
            "cone_fibers_dim3",
            "blowup_degree_12",
            "liaison_deg13",
        ],
    )
    got = _by_name(report)
    assert got["threefold_profile"].actual == {"gens_degree_2": 7, "dimension": 3, "degree": 8}
    assert got["secant_length_two"].actual == {"dim": 0, "degree": 2}
    assert got["blowup_degree_12"].actual == 12
    assert got["liaison_deg13"].actual == 13
    assert report.passed
    print("ACCEPTANCE 9: PASS - degree-8 threefold, secant-line fibers, 12 -> 13")


def test_acceptance_10_property_suites():
    # bilinear flip identity on 200 random matrices
    F = GF(101)
    rng = random.Random(55)
    for _ in range(200):
        n = rng.choice([2, 3])
        m = rng.choice([n, n + 1])
        entries = [
            [
                Poly.linear_form(F, m + 1, [rng.randrange(-2, 3) for _ in range(m + 1)])
                for _ in range(n)
            ]
            for _ in range(n + 1)
        ]
        build_map(PolyMatrix(entries))  # IdentityFailure guards the identity
    # flip involution for all d1, d2 <= 20
    for d1 in range(1, 21):
        for d2 in range(1, 21):
            out = class_flip(d1, d2)
            assert (out["H2"].scale(d2) - out["E2"]).as_tuple() == (1, 0)
    # fiber-rank duality on full small-field enumerations
    for q in (3, 5):
        field = GF(q)
        mp = build_map(_matrix_from_data(SEGRE_P5, field))
        for y in enumerate_projective_points(2, field):
            rep = fiber(mp, y, CFG, with_hilbert=False)
            assert rep.fiber_dim == mp.m - rep.rank
    # Groebner S-pair reduction and coordinate-change invariance
    x = lambda i: Poly.variable(F, 4, i)
    twisted = Ideal(F, 4, [x(0) * x(2) - x(1) * x(1), x(0) * x(3) - x(1) * x(2), x(1) * x(3) - x(2) * x(2)])
    G = groebner_basis(twisted)
    for i, f in enumerate(G.basis):
        for g in G.basis[i + 1 :]:
            assert normal_form(spoly(f, g), G).is_zero()
    from cremona.groebner import hilbert_data
    from cremona.linalg import rank as mrank

    base = hilbert_data(G)
    rng = random.Random(99)
    for _ in range(5):
        while True:
            M = [[F.random(rng) for _ in range(4)] for _ in range(4)]
            if mrank([row[:] for row in M], F) == 4:
                break
        lines = [Poly.linear_form(F, 4, M[i]) for i in range(4)]
        moved = [g.substitute(lines) for g in twisted.gens]
        assert hilbert_data(groebner_basis(Ideal(F, 4, moved))) == base
    print("ACCEPTANCE 10: PASS - property suites (flip identity, involution, duality, Groebner)")
