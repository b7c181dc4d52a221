import json
import random

import pytest

from cremona.config import RunConfig
from cremona.errors import BadPrimeWarning, ConstructionFailed, ShapeError, UnknownId
from cremona.fields import GF
from cremona.gallery import (
    CheckSpec,
    EXAMPLE_IDS,
    Manifest,
    adjust_prime,
    build_example,
    count_ruling_planes,
    del_pezzo_quintic,
    divisor12_complete_intersection,
    fano_cubic,
    instance_from_json,
    instance_to_json,
    segre_cone,
    verify_manifest,
    _rand_lines,
    _segre_quadrics,
)
from cremona.groebner import Ideal, groebner_basis, hilbert_data
from cremona.poly import Poly

F101 = GF(101)
CFG = RunConfig(prime=101, seed=20240)


def test_unknown_id():
    with pytest.raises(UnknownId):
        build_example("not_a_thing", F101, CFG)


def test_example_ids_complete():
    assert set(EXAMPLE_IDS) == {
        "segre_p5",
        "todd_room",
        "bordiga_random",
        "quinto_p5_plane",
        "quinto_p5_solid",
        "conic_p5_general",
        "conic_p5_special",
        "del_pezzo_cubic",
        "semple_tyrrell",
        "p7_threefold",
    }


def test_segre_cone_shapes():
    W = segre_cone(6, 0, F101)
    hd = hilbert_data(groebner_basis(W))
    assert (hd.projective_dimension, hd.degree) == (4, 3)
    M = segre_cone(7, 1, F101)
    hd = hilbert_data(groebner_basis(M))
    assert (hd.projective_dimension, hd.degree) == (5, 3)
    S = segre_cone(5, None, F101)
    hd = hilbert_data(groebner_basis(S))
    assert (hd.projective_dimension, hd.degree) == (3, 3)
    with pytest.raises(ShapeError):
        segre_cone(5, 0, F101)


def test_segre_threefold_point_count_matches_parametrization():
    # the threefold is the image of P^1 x P^2, so it has (q+1)(q^2+q+1) points
    from cremona.poly import enumerate_projective_points

    for q in (2, 4):
        field = GF(2) if q == 2 else GF(2, 2)
        S = segre_cone(5, None, field)
        count = sum(
            1
            for pt in enumerate_projective_points(5, field)
            if all(field.is_zero(g.evaluate(pt, field)) for g in S.gens)
        )
        assert count == (q + 1) * (q * q + q + 1)


def test_divisor12_degenerate_seed_fails():
    cone = segre_cone(6, 0, F101)
    # a "quadric" that is identically zero on the cone collapses residuation
    with pytest.raises(ConstructionFailed):
        divisor12_complete_intersection(
            cone, [[[0] * 7, [0] * 7, [0] * 7], [[0] * 7, [0] * 7, [0] * 7]], CFG
        )


def test_del_pezzo_construction_and_reducible_seed():
    rng = random.Random(7)
    X = del_pezzo_quintic(F101, _rand_lines(rng, F101, 3, 6), CFG)
    assert [g.degree for g in X.gens] == [2, 2, 2, 2, 2]
    hd = hilbert_data(groebner_basis(X))
    assert (hd.projective_dimension, hd.degree) == (2, 5)
    with pytest.raises(ConstructionFailed):
        del_pezzo_quintic(F101, [[0] * 6, [0] * 6, [0] * 6], CFG)


def test_fano_cubic_contains_x():
    rng = random.Random(11)
    X = del_pezzo_quintic(F101, _rand_lines(rng, F101, 3, 6), CFG)
    Y = fano_cubic(X, _rand_lines(rng, F101, 4, 6))
    from cremona.groebner import normal_form

    assert normal_form(Y, groebner_basis(X)).is_zero()
    with pytest.raises(ConstructionFailed):
        fano_cubic(X, [[0] * 6] * 4)


def test_count_ruling_planes_forced_and_degenerate():
    segre = _segre_quadrics(F101, 6)
    x = [Poly.variable(F101, 6, i) for i in range(6)]
    # force the plane s=0 (x0=x1=x2=0): cubic built from that plane's ideal
    Y = x[0] * segre[0] + x[1] * segre[1] + x[2] * segre[2]
    out = count_ruling_planes(Y, F101)
    assert out["count"] >= 1
    # a cubic through the whole Segre is flagged degenerate with gcd degree 3
    Ydeg = x[0] * segre[0] + x[4] * segre[1] + x[5] * segre[2]
    out = count_ruling_planes(Ydeg, F101)
    assert out == {"count": 3, "degenerate": True}


def test_count_ruling_planes_bounded_for_built_cubic(instance_cache):
    inst = instance_cache("del_pezzo_cubic")
    out = count_ruling_planes(inst.aux["Y"], F101)
    assert not out["degenerate"]
    assert out["count"] <= 2


def test_adjust_prime():
    assert adjust_prime(101, {10, 11}) == (101, False)
    p, bumped = adjust_prime(5, {10, 11})
    assert bumped and p not in (5, 11) and 10 % p and 11 % p


def test_bad_prime_warning_bumps():
    # 2 divides a matrix coefficient of the stored data, so it gets bumped
    with pytest.warns(BadPrimeWarning):
        inst = build_example("todd_room", GF(2), RunConfig(prime=2, seed=1))
    assert inst.field.char == 3


def test_manifest_paper_checks_have_anchors():
    for ex in EXAMPLE_IDS:
        if ex in ("segre_p5", "todd_room", "conic_p5_general", "conic_p5_special"):
            inst = build_example(ex, F101, CFG)
            for chk in inst.manifest:
                if chk.provenance == "PAPER":
                    assert chk.anchor


def test_check_spec_requires_anchor():
    with pytest.raises(ValueError):
        CheckSpec("x", "op", {}, 1, "PAPER", "")


def test_harness_flags_wrong_expected_value(instance_cache):
    inst = instance_cache("segre_p5")
    sabotaged = []
    for chk in inst.manifest:
        if chk.name == "threefold_hilbert":
            sabotaged.append(CheckSpec(chk.name, chk.op, chk.args, [3, 4, 0], "TRIVIAL"))
        else:
            sabotaged.append(chk)
    import copy

    broken = copy.copy(inst)
    broken.manifest = Manifest(tuple(sabotaged))
    rep = verify_manifest(broken, CFG)
    assert not rep.passed
    fails = [c for c in rep.checks if not c.passed]
    assert len(fails) == 1 and fails[0].name == "threefold_hilbert"


def test_instance_serialization_round_trip(instance_cache):
    inst = instance_cache("segre_p5")
    blob = instance_to_json(inst)
    text = json.dumps(blob, sort_keys=True)
    back = instance_from_json(json.loads(text), CFG)
    assert json.dumps(instance_to_json(back), sort_keys=True) == text


def test_serialization_round_trip_form_system(instance_cache):
    inst = instance_cache("del_pezzo_cubic")
    blob = instance_to_json(inst)
    back = instance_from_json(blob, CFG)
    assert instance_to_json(back) == blob


def test_conic_matrices_differ_only_in_last_row():
    from cremona.gallery import CONIC_GENERAL, CONIC_SPECIAL, QUINTO_PLANE, QUINTO_SOLID

    assert QUINTO_PLANE[:-1] == QUINTO_SOLID[:-1]
    assert QUINTO_PLANE[-1] != QUINTO_SOLID[-1]
    assert CONIC_GENERAL != CONIC_SPECIAL


def test_construction_retries_are_seeded_deterministic():
    a = build_example("bordiga_random", F101, CFG)
    b = build_example("bordiga_random", F101, CFG)
    assert a.payload.A == b.payload.A
    c = build_example("bordiga_random", F101, RunConfig(prime=101, seed=999))
    assert c.payload.A == c.payload.A
