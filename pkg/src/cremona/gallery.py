"""Named example constructors with machine-checkable manifests.

Each example bundles the payload (a determinantal matrix map or an explicit
quadric system), the auxiliary construction data, and a manifest of checks
with expected values and provenance tags.  Genericity is realized as seeded
pseudo-random choices plus certificate-check-and-retry; the seed is part of
every report.
"""

from __future__ import annotations

import itertools
import random
import time
import warnings
from dataclasses import dataclass, field as dc_field

from .config import RunConfig
from .detmap import (
    DetMap,
    SystemMap,
    build_map,
    eval_map,
    exceptional_membership,
    fiber,
    fiber_dim_at,
    image_dim_estimate,
    linear_system_dim,
    birationality_probe,
    minor_ideal,
    polymatrix_from_json,
    polymatrix_to_json,
    rank_stratum,
    sample_det_variety_points,
    smoothness_certificate,
    supported_only_at,
)
from .errors import (
    BadPrimeWarning,
    BasePoint,
    BudgetExceeded,
    ConstructionFailed,
    CremonaError,
    ShapeError,
    UnknownId,
)
from .fields import GF, PrimeField, field_from_cfg, is_prime
from .groebner import (
    Ideal,
    groebner_basis,
    hilbert_data,
    ideal_dimension_piece,
    ideal_quotient,
    ideal_sum,
    normal_form,
)
from .hilbert import hilbert_data_from_leading
from .linalg import kernel, rank
from .poly import Poly, PolyMatrix, ProjPoint, enumerate_projective_points
from . import relations

__all__ = [
    "EXAMPLE_IDS",
    "CheckSpec",
    "Manifest",
    "ExampleInstance",
    "build_example",
    "verify_manifest",
    "segre_cone",
    "divisor12_complete_intersection",
    "del_pezzo_quintic",
    "fano_cubic",
    "count_ruling_planes",
    "default_matrix_manifest",
    "instance_to_json",
    "instance_from_json",
    "adjust_prime",
]


# ---------------------------------------------------------------------------
# canonical integer matrices (reduced mod p at load)

SEGRE_P5 = [
    [[1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0]],
    [[0, 1, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0]],
    [[0, 0, 1, 0, 0, 0], [0, 0, 0, 0, 0, 1]],
]

TODD_ROOM = [
    [[1, -2, 0, 0, 0], [1, 0, -2, 0, 0], [2, 0, 0, 0, 0], [0, -1, 0, 0, -1]],
    [[1, 0, 0, 1, 0], [0, -1, 1, 0, 0], [0, 1, 0, -2, 0], [0, 0, 2, -1, 0]],
    [[0, -1, 0, -1, 0], [0, 0, 0, -1, 2], [1, 0, 0, 0, -2], [-1, 1, 0, 0, 0]],
    [[0, -2, 0, 0, 1], [-1, 0, -1, 0, 0], [0, 0, 1, 1, 0], [0, 0, 1, 0, 1]],
    [[0, 0, 0, 1, 0], [0, 0, 0, 0, 1], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]],
]

# The two quinto-quintic matrices share every row but the last.  The variant
# whose last row is (x4, x5, x4, x5, x4) has rank 2 at (0:...:0:1), so its
# exceptional fiber there is a solid P^3; the (x4, x5, x3, x5, x4) variant has
# rank 3 and an exceptional plane.
_QUINTO_COMMON = [
    [[0, -2, 0, 0, -2, 0], [-1, -2, 0, 0, 0, 1], [-1, 0, -1, 0, 0, 1], [2, 0, 0, 1, -2, 0], [0, 0, -2, 0, 2, 0]],
    [[1, 0, 2, 0, 0, 0], [-2, 0, 2, 0, 0, 0], [0, 0, 1, -1, -1, 0], [0, -1, 1, 0, 0, 0], [0, 0, 0, -2, 2, 0]],
    [[0, 0, 0, 0, 1, 1], [1, 0, 0, 0, -1, 1], [2, 1, 0, 0, 0, 0], [1, 0, -1, 0, 0, -2], [0, 1, 0, 0, 0, 1]],
    [[-1, 0, 0, -1, 0, 0], [0, -2, 0, 1, 0, 0], [0, -2, 0, 0, 1, 0], [0, 0, -1, 0, 1, 0], [0, -1, 0, -1, 0, -2]],
    [[0, 1, 0, 1, 0, -2], [0, 0, 0, 1, 0, -2], [0, 0, 0, -2, 0, 2], [0, 1, 0, 0, 0, 2], [-1, 0, 1, 0, 0, 0]],
]
QUINTO_SOLID = _QUINTO_COMMON + [
    [[0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1], [0, 0, 0, 0, 1, 0]],
]
QUINTO_PLANE = _QUINTO_COMMON + [
    [[0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 1], [0, 0, 0, 0, 1, 0]],
]

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

EXAMPLE_IDS = (
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
)

# nonzero integer coefficients of each stored matrix; a prime dividing one
# would change the matrix at load, so it is bumped with a warning (the
# quoted degrees/genera themselves are characteristic-free combinatorics)
_SENSITIVE = {
    "segre_p5": {1},
    "todd_room": {1, 2},
    "bordiga_random": {1, 2},
    "quinto_p5_plane": {1, 2},
    "quinto_p5_solid": {1, 2},
    "conic_p5_general": {1},
    "conic_p5_special": {1},
    "del_pezzo_cubic": {1},
    "semple_tyrrell": {1},
    "p7_threefold": {1},
}


def adjust_prime(p, sensitive):
    """Bump the prime past any divisor of a protected expected quantity."""
    bumped = False
    while any(v % p == 0 for v in sensitive if v):
        bumped = True
        p += 1
        while not is_prime(p):
            p += 1
    return p, bumped


# ---------------------------------------------------------------------------
# manifests

@dataclass(frozen=True)
class CheckSpec:
    """One machine-checkable expected fact with its provenance anchor."""

    name: str
    op: str
    args: dict
    expected: object
    provenance: str  # "PAPER" | "DERIVED" | "TRIVIAL"
    anchor: str = ""

    def __post_init__(self):
        if self.provenance == "PAPER" and not self.anchor:
            raise ValueError("PAPER checks carry an anchor quote")


@dataclass(frozen=True)
class Manifest:
    checks: tuple

    def __iter__(self):
        return iter(self.checks)


@dataclass
class ExampleInstance:
    """A named example: payload map, field, construction data and manifest."""

    id: str
    kind: str  # "DetMatrix" | "FormSystem"
    payload: object
    field: object
    manifest: Manifest
    seed: int = 0
    aux: dict = dc_field(default_factory=dict)


def _jsonable(value):
    if isinstance(value, ProjPoint):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, relations.NoSolution):
        return "no_solution"
    return value


# ---------------------------------------------------------------------------
# elementary constructions of section 4-6

def _segre_quadrics(field, nvars):
    """2x2 minors of [[x0,x1,x2],[x3,x4,x5]] viewed in a ring with nvars >= 6."""
    x = [Poly.variable(field, nvars, i) for i in range(nvars)]
    return [
        x[0] * x[4] - x[1] * x[3],
        x[0] * x[5] - x[2] * x[3],
        x[1] * x[5] - x[2] * x[4],
    ]


def segre_cone(ambient, vertex_dim, field):
    """Ideal of the cone over the Segre threefold with a point or line vertex.

    ambient 5 gives the threefold itself; 6 a vertex point; 7 a vertex line.
    """
    if vertex_dim == 0 and ambient != 6:
        raise ShapeError("point vertex lives in P^6")
    if vertex_dim == 1 and ambient != 7:
        raise ShapeError("line vertex lives in P^7")
    if vertex_dim is None and ambient != 5:
        raise ShapeError("the Segre threefold lives in P^5")
    return Ideal(field, ambient + 1, _segre_quadrics(field, ambient + 1))


def _ruling_ideal(field, nvars, st):
    """Linear forms cutting the ruling space over the Segre point (s:t)."""
    s, t = st
    x = [Poly.variable(field, nvars, i) for i in range(nvars)]
    return Ideal(
        field,
        nvars,
        [x[i].scale(t) - x[3 + i].scale(s) for i in range(3)],
    )


def divisor12_complete_intersection(cone, seeds, cfg=None):
    """Two seeded (1,2)-divisors on a Segre cone and their complete intersection.

    Each seed quadric contains one ruling space R; residuation
    ((I_cone + Q) : I_R) peels off R and leaves the divisor.  Returns the sum
    ideal, expected to cut a degree-8 subvariety of codimension 2 in the cone.
    """
    cfg = cfg or RunConfig()
    field = cone.field
    nvars = cone.nvars
    rulings = ((field.one, field.zero), (field.zero, field.one))
    divisors = []
    for st, lin_seeds in zip(rulings, seeds):
        R = _ruling_ideal(field, nvars, st)
        Q = Poly.zero(field, nvars)
        for r, coeffs in zip(R.gens, lin_seeds):
            Q = Q + r * Poly.linear_form(field, nvars, coeffs)
        if Q.is_zero() or normal_form(Q, groebner_basis(cone, cfg.gb_pair_budget, cfg.gb_degree_cap)).is_zero():
            raise ConstructionFailed("seed quadric degenerates on the cone")
        D = ideal_quotient(ideal_sum(cone, Ideal(field, nvars, [Q])), R,
                           cfg.gb_pair_budget, cfg.gb_degree_cap)
        divisors.append(D)
    total = ideal_sum(cone, ideal_sum(divisors[0], divisors[1]))
    return Ideal(field, nvars, _dedupe_gens(total.gens))


def _dedupe_gens(gens):
    out = []
    seen = set()
    for g in gens:
        if g.is_zero():
            continue
        key = g.monic()
        if key not in seen:
            seen.add(key)
            out.append(g)
    return out


def del_pezzo_quintic(field, seed_lines, cfg=None):
    """The quintic del Pezzo surface linked to a plane on the Segre threefold.

    Takes the plane x0=x1=x2=0, a seeded quadric through it, and residuates:
    ((I_Segre + Q3) : I_plane).  Generators come back ordered as the three
    Segre quadrics, Q3, then the new quadric.
    """
    cfg = cfg or RunConfig()
    x = [Poly.variable(field, 6, i) for i in range(6)]
    segre = _segre_quadrics(field, 6)
    Q3 = Poly.zero(field, 6)
    for i, coeffs in enumerate(seed_lines):
        Q3 = Q3 + x[i] * Poly.linear_form(field, 6, coeffs)
    if Q3.is_zero():
        raise ConstructionFailed("zero seed quadric")
    plane = Ideal(field, 6, [x[0], x[1], x[2]])
    IX = ideal_quotient(
        ideal_sum(Ideal(field, 6, segre), Ideal(field, 6, [Q3])),
        plane,
        cfg.gb_pair_budget,
        cfg.gb_degree_cap,
    )
    G = groebner_basis(IX, cfg.gb_pair_budget, cfg.gb_degree_cap)
    quly = [g for g in G.basis if g.degree == 2]
    if ideal_dimension_piece(G, 2) != 5 or len(quly) != 5:
        raise ConstructionFailed("residuation did not produce 5 quadrics")
    hd = hilbert_data(G)
    if (hd.projective_dimension, hd.degree) != (2, 5):
        raise ConstructionFailed("residual is not a quintic surface")
    # canonical generator order: Segre quadrics, Q3, then one new quadric
    base = segre + [Q3]
    Gbase = groebner_basis(Ideal(field, 6, base), cfg.gb_pair_budget, cfg.gb_degree_cap)
    extra = None
    for g in quly:
        nf = normal_form(g, Gbase)
        if not nf.is_zero():
            extra = nf.monic()
            break
    if extra is None:
        raise ConstructionFailed("residual adds no quadric beyond the seed")
    out = Ideal(field, 6, base + [extra])
    for g in out.gens:
        if not normal_form(g, G).is_zero():
            raise ConstructionFailed("generator escaped the residual ideal")
    if ideal_dimension_piece(groebner_basis(out, cfg.gb_pair_budget, cfg.gb_degree_cap), 2) != 5:
        raise ConstructionFailed("five quadrics did not stay independent")
    return out


def fano_cubic(X, lines):
    """Cubic l0*Q0 + ... + l3*Q3 through the del Pezzo surface."""
    field = X.field
    Y = Poly.zero(field, 6)
    for q, coeffs in zip(X.gens[:4], lines):
        Y = Y + q * Poly.linear_form(field, 6, coeffs)
    if Y.is_zero():
        raise ConstructionFailed("zero cubic")
    return Y


def count_ruling_planes(Y, field=None):
    """Number of (1,0)-ruling planes of the Segre contained in the cubic Y,
    counted with multiplicity over the algebraic closure.

    Substitutes x = (s u0, s u1, s u2, t u0, t u1, t u2), collects the u-degree-3
    coefficient forms (binary cubics in s, t) and returns the degree of their
    gcd.  A zero gcd means Y contains the whole Segre: degenerate, count 3.
    """
    field = field or Y.field
    if Y.nvars != 6 or Y.degree != 3:
        raise ShapeError("need a cubic in six variables")
    # target ring: (s, t, u0, u1, u2)
    s = Poly.variable(field, 5, 0)
    t = Poly.variable(field, 5, 1)
    u = [Poly.variable(field, 5, 2 + i) for i in range(3)]
    args = [s * u[0], s * u[1], s * u[2], t * u[0], t * u[1], t * u[2]]
    sub = Y.substitute(args)
    buckets = {}
    for e, c in sub.terms.items():
        ukey = e[2:]
        buckets.setdefault(ukey, {})[e[:2]] = c
    forms = []
    for ukey, terms in buckets.items():
        vec = [field.zero] * 4
        for (es, et), c in terms.items():
            vec[es] = c
        forms.append(vec)
    if not forms:
        return {"count": 3, "degenerate": True}
    deg = _binary_form_gcd_degree(forms, field)
    if deg is None:
        return {"count": 3, "degenerate": True}
    return {"count": deg, "degenerate": False}


def _binary_form_gcd_degree(forms, field):
    """Degree of the gcd of binary forms given as coefficient vectors in s."""
    from .fields import _ugcd

    p = field.p
    d = len(forms[0]) - 1
    t_ord = None
    g = []
    for vec in forms:
        coeffs = [int(c) % p for c in vec]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            continue
        t_here = d - (len(coeffs) - 1)
        t_ord = t_here if t_ord is None else min(t_ord, t_here)
        g = _ugcd(g, coeffs, p) if g else coeffs
    if not g:
        return None
    return t_ord + (len(g) - 1)


# ---------------------------------------------------------------------------
# point samplers

def _solve_quadratic(field, a, b, c):
    """Roots of a w^2 + b w + c over a prime field."""
    p = field.p
    a, b, c = a % p, b % p, c % p
    if a == 0:
        if b == 0:
            return []
        return [(-c) * field.inv(b) % p]
    disc = (b * b - 4 * a * c) % p
    r = field.sqrt(disc)
    if r is None:
        return []
    inv2a = field.inv(2 * a % p)
    roots = {(-b + r) * inv2a % p, (-b - r) * inv2a % p}
    return sorted(roots)


def sample_cone_points(field, nvars, vertex_dim, count, rng, avoid=None):
    """Random points of the Segre cone, optionally off a subvariety."""
    out = []
    attempts = 0
    while len(out) < count and attempts < count * 200:
        attempts += 1
        s, t = field.random(rng), field.random(rng)
        u = [field.random(rng) for _ in range(3)]
        w = [field.random(rng) for _ in range(nvars - 6)]
        coords = [field.mul(s, ui) for ui in u] + [field.mul(t, ui) for ui in u] + w
        if all(field.is_zero(c) for c in coords):
            continue
        pt = ProjPoint(field, coords)
        if avoid is not None and all(field.is_zero(g.evaluate(pt, field)) for g in avoid.gens):
            continue
        out.append(pt)
    return out


def sample_divisor_intersection_points(ideal, field, nvars, count, rng):
    """Points of the degree-8 intersection inside the cone, by solving along
    the vertical lines of the cone parametrization."""
    extra = [g for g in ideal.gens if g.degree == 2][3:]  # beyond the cone quadrics
    x_of = lambda su, tu, w: list(su) + list(tu) + list(w)
    out = []
    seen = set()
    attempts = 0
    nv_extra = nvars - 6
    while len(out) < count and attempts < count * 600:
        attempts += 1
        s, t = field.random(rng), field.random(rng)
        u = [field.random(rng) for _ in range(3)]
        if all(field.is_zero(v) for v in u) or (field.is_zero(s) and field.is_zero(t)):
            continue
        su = [field.mul(s, ui) for ui in u]
        tu = [field.mul(t, ui) for ui in u]
        w_rest = [field.random(rng) for _ in range(nv_extra - 1)]
        # solve the first non-cone quadric for the last vertex coordinate
        base = su + tu + w_rest + [0]
        f = extra[0]
        # f(base + w * e_last) is quadratic in w
        c0 = f.evaluate(base, field)
        e_last = [field.zero] * (nvars - 1) + [field.one]
        c2 = f.evaluate(e_last, field)
        mid = f.evaluate([field.add(a, b) for a, b in zip(base, e_last)], field)
        c1 = field.sub(field.sub(mid, c0), c2)
        for wlast in _solve_quadratic(field, c2, c1, c0):
            coords = su + tu + w_rest + [wlast]
            if all(field.is_zero(c) for c in coords):
                continue
            pt = ProjPoint(field, coords)
            if pt in seen:
                continue
            if all(field.is_zero(g.evaluate(pt, field)) for g in ideal.gens):
                seen.add(pt)
                out.append(pt)
                if len(out) >= count:
                    break
    return out


def sample_segre_quadric_points(field, Q3, count, rng, avoid_plane=True):
    """Points of Segre ∩ Q3 off the plane x0=x1=x2=0 (del Pezzo points)."""
    out = []
    seen = set()
    attempts = 0
    while len(out) < count and attempts < count * 400:
        attempts += 1
        s, t = field.random(rng), field.random(rng)
        u01 = [field.random(rng) for _ in range(2)]
        base = [field.mul(s, u01[0]), field.mul(s, u01[1]), 0,
                field.mul(t, u01[0]), field.mul(t, u01[1]), 0]
        dirv = [0, 0, s, 0, 0, t]
        c0 = Q3.evaluate(base, field)
        c2 = Q3.evaluate(dirv, field)
        mid = Q3.evaluate([field.add(a, b) for a, b in zip(base, dirv)], field)
        c1 = field.sub(field.sub(mid, c0), c2)
        for u2 in _solve_quadratic(field, c2, c1, c0):
            coords = [field.add(b, field.mul(u2, d)) for b, d in zip(base, dirv)]
            if all(field.is_zero(c) for c in coords):
                continue
            pt = ProjPoint(field, coords)
            if avoid_plane and all(field.is_zero(c) for c in pt.coords[:3]):
                continue
            if pt not in seen:
                seen.add(pt)
                out.append(pt)
                if len(out) >= count:
                    break
    return out


# ---------------------------------------------------------------------------
# example builders

def _matrix_from_data(data, field):
    rows = []
    for row in data:
        rows.append([Poly.linear_form(field, len(row[0]), coeffs) for coeffs in row])
    return PolyMatrix(rows)


def _bordiga_matrix(field, rng):
    m = 4
    return PolyMatrix(
        [
            [
                Poly.linear_form(field, m + 1, [rng.randrange(-2, 3) for _ in range(m + 1)])
                for _ in range(3)
            ]
            for _ in range(4)
        ]
    )


def _check(name, op, args, expected, provenance, anchor=""):
    return CheckSpec(name, op, dict(args), expected, provenance, anchor)


def build_example(example_id, field=None, cfg=None):
    """Instantiate a named example over the given field, with its manifest."""
    cfg = cfg or RunConfig()
    if field is None:
        field = GF(cfg.prime)
    if example_id not in EXAMPLE_IDS:
        raise UnknownId(f"unknown example id {example_id!r}")
    if field.char > 0:
        newp, bumped = adjust_prime(field.char, _SENSITIVE.get(example_id, set()))
        if bumped:
            warnings.warn(
                f"prime {field.char} divides an expected quantity of {example_id}; "
                f"bumped to {newp}",
                BadPrimeWarning,
            )
            field = GF(newp, field.degree) if field.degree > 1 else GF(newp)
    builder = _BUILDERS[example_id]
    return builder(field, cfg)


def _build_segre(field, cfg):
    A = _matrix_from_data(SEGRE_P5, field)
    mp = build_map(A)
    checks = [
        _check("bilinear_identity", "bilinear_identity", {}, True, "TRIVIAL"),
        _check(
            "flip_matrix",
            "b_matrix",
            {},
            [[[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0], [0, 0, 0], [0, 0, 0]],
             [[0, 0, 0], [0, 0, 0], [0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]],
            "PAPER",
            "the 2x6 matrix B(y) with rows (y0,y1,y2,0,0,0) and (0,0,0,y0,y1,y2)",
        ),
        _check(
            "threefold_hilbert",
            "x1_hilbert",
            {},
            [3, 3, 0],
            "DERIVED",
            "",
        ),
        _check(
            "x1_smooth",
            "smooth_x1",
            {"codim": 2},
            "smooth",
            "DERIVED",
        ),
        _check(
            "eval_sign_convention",
            "eval_at",
            {"point": "1:0:0:0:1:0"},
            "(0:0:1)",
            "DERIVED",
        ),
        _check(
            "all_fibers_p3_over_f3",
            "segre_target_enumeration",
            {"q": 3},
            {"targets": 13, "fiber_dims": [3], "intersection": [[2, 2]]},
            "PAPER",
            "every fiber is a P^3 cutting X^1 along a quadric surface",
        ),
        _check(
            "probe_fiber_dim",
            "probe",
            {},
            {"kind": "fiber_dim", "dim": 3},
            "PAPER",
            "every fiber of the resolved map is a P^3",
        ),
        _check(
            "rank1_stratum_empty",
            "stratum_empty",
            {"r": 1},
            True,
            "DERIVED",
        ),
    ]
    return ExampleInstance("segre_p5", "DetMatrix", mp, field, Manifest(tuple(checks)), cfg.seed)


def _build_todd_room(field, cfg):
    A = _matrix_from_data(TODD_ROOM, field)
    mp = build_map(A)
    checks = [
        _check("bilinear_identity", "bilinear_identity", {}, True, "TRIVIAL"),
        _check(
            "x1_hilbert",
            "x1_hilbert",
            {},
            [2, 10, 11],
            "PAPER",
            "a smooth degree 10 and genus 11 surface",
        ),
        _check(
            "x1_matches_hilbert_burch",
            "hilbert_burch",
            {"m": 4, "n": 4},
            [2, 10, 11],
            "PAPER",
            "resolution O(-5)^4 -> O(-4)^5 of the ideal sheaf",
        ),
        _check(
            "x1_smooth",
            "smooth_x1",
            {"codim": 2},
            "smooth",
            "PAPER",
            "one verifies that X^1 is smooth",
        ),
        _check(
            "sing_x2_singleton",
            "stratum_points",
            {"r": 2},
            {"points": ["(0:0:0:0:1)"], "certified_all_extensions": True,
             "dimension": 0, "degree": 1},
            "PAPER",
            "Sing(X^2) = (0:0:0:0:1)",
        ),
        _check(
            "fiber_is_plane",
            "fiber_at",
            {"point": "0:0:0:0:1"},
            {"rank": 2, "fiber_dim": 2, "equations": [[0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]},
            "PAPER",
            "phi^{-1}(0:0:0:0:1) is the plane x3 = x4 = 0",
        ),
        _check(
            "fiber_cuts_quartic",
            "fiber_intersection",
            {"point": "0:0:0:0:1"},
            {"dim": 1, "degree": 4},
            "PAPER",
            "which cuts X^1 along a smooth quartic plane curve",
        ),
        _check(
            "fiber_quartic_smooth",
            "fiber_curve_smooth",
            {"point": "0:0:0:0:1"},
            "smooth",
            "PAPER",
            "a smooth quartic plane curve",
        ),
        _check(
            "plane_point_maps_to_target",
            "plane_maps_to",
            {"equations": [3, 4], "target": "0:0:0:0:1", "samples": 5},
            True,
            "PAPER",
            "the plane x3 = x4 = 0 is contracted to (0:0:0:0:1)",
        ),
        _check("h0_quartics", "h0_ideal", {"d": 4}, 5, "PAPER",
               "h^0(I_X1(d1)) = n + 1"),
        _check("h0_cubics", "h0_ideal", {"d": 3}, 0, "PAPER",
               "h^0(I_X1(d1 - 1)) = 0"),
        _check("h0_interpolation_cross", "h0_points", {"d": 4, "oversample": 40}, 5, "DERIVED"),
        _check("esb_d2", "esb_d2", {"n": 4, "d1": 4, "r1": 2}, 4, "PAPER",
               "special Cremona transformation of type (4,4)"),
        _check("esb_r2", "esb_r2", {"n": 4, "d1": 4, "d2": 4}, 2, "PAPER",
               "the base locus scheme X^2 is a surface"),
        _check(
            "probe_birational",
            "probe",
            {},
            {"kind": "birational_evidence", "dim": 0},
            "PAPER",
            "special Cremona transformation of type (4,4)",
        ),
        _check(
            "exceptional_plane_point",
            "exceptional_at_plane_point",
            {"equations": [3, 4]},
            True,
            "PAPER",
            "the fiber over (0:0:0:0:1) is two dimensional",
        ),
        _check(
            "exceptional_rare_generically",
            "exceptional_sample_rate",
            {"samples": 100, "max_true": 20},
            True,
            "DERIVED",
        ),
        _check("secant_degree", "secant_degree", {"d1": 4, "d2": 4}, 15, "PAPER",
               "Sec_4(X^1) is a hypersurface of degree d1 d2 - 1"),
    ]
    return ExampleInstance("todd_room", "DetMatrix", mp, field, Manifest(tuple(checks)), cfg.seed)


def _build_bordiga(field, cfg):
    rng = random.Random(cfg.seed)
    last_err = None
    for _ in range(cfg.retry_budget):
        A = _bordiga_matrix(field, rng)
        try:
            mp = build_map(A)
        except CremonaError as exc:
            last_err = exc
            continue
        I = Ideal(field, 5, list(mp.minors))
        if len(I.gens) < 4:
            continue
        verdict = smoothness_certificate(I, 2, cfg)
        if verdict.kind == "smooth":
            hd = hilbert_data(groebner_basis(I, cfg.gb_pair_budget, cfg.gb_degree_cap))
            if (hd.projective_dimension, hd.degree, hd.sectional_genus) == (2, 6, 3):
                break
    else:
        raise ConstructionFailed(f"no smooth Bordiga instance within retries: {last_err}")
    checks = [
        _check("bilinear_identity", "bilinear_identity", {}, True, "TRIVIAL"),
        _check("x1_hilbert", "x1_hilbert", {}, [2, 6, 3], "PAPER",
               "a degree 6 and genus 3 Bordiga surface"),
        _check("x1_matches_hilbert_burch", "hilbert_burch", {"m": 4, "n": 3},
               [2, 6, 3], "PAPER", "determinantal of a 4 x 3 matrix of linear forms"),
        _check("x1_smooth", "smooth_x1", {"codim": 2}, "smooth", "PAPER",
               "a random choice over a suitable field defines a smooth surface"),
        _check(
            "ten_exceptional_planes",
            "stratum",
            {"r": 2},
            {"dimension": 0, "degree": 10},
            "PAPER",
            "the locus rk B(y) <= 2 consists of exactly 10 points",
        ),
        _check(
            "probe_fiber_dim",
            "probe",
            {},
            {"kind": "fiber_dim", "dim": 1},
            "PAPER",
            "through the general point passes a unique trisecant line",
        ),
        _check(
            "trisecant_length",
            "generic_fiber_intersection",
            {"samples": 5},
            {"dim": 0, "degree": 3},
            "PAPER",
            "one apparent triple point",
        ),
    ]
    return ExampleInstance("bordiga_random", "DetMatrix", mp, field, Manifest(tuple(checks)), cfg.seed)


def _build_quinto(which):
    data = QUINTO_PLANE if which == "plane" else QUINTO_SOLID
    fiber_eqs = [3, 4, 5] if which == "plane" else [4, 5]
    fiber_dim = 2 if which == "plane" else 3
    rank_at = 3 if which == "plane" else 2

    def build(field, cfg):
        A = _matrix_from_data(data, field)
        mp = build_map(A)
        eqs = [[1 if i == j else 0 for i in range(6)] for j in fiber_eqs]
        checks = [
            _check("bilinear_identity", "bilinear_identity", {}, True, "TRIVIAL"),
            _check(
                "exceptional_fiber",
                "fiber_at",
                {"point": "0:0:0:0:0:1"},
                {"rank": rank_at, "fiber_dim": fiber_dim, "equations": eqs},
                "PAPER",
                "the plane x3=x4=x5=0, respectively the 3-plane x4=x5=0, is mapped to (0:0:0:0:0:1)",
            ),
            _check(
                "unique_exceptional_target",
                "stratum_points",
                {"r": 3},
                {"points": ["(0:0:0:0:0:1)"], "certified_all_extensions": True,
                 "dimension": 0},
                "PAPER",
                "this is the only singular point of X^2",
            ),
            _check("hilbert_burch", "hilbert_burch", {"m": 5, "n": 5}, [3, 15, 26],
                   "PAPER", "a degree 15 and genus 26 smooth 3-fold"),
            _check("x1_hilbert_sample_h0", "h0_points", {"d": 5, "oversample": 60}, 6,
                   "DERIVED"),
            _check("secant_degree", "secant_degree", {"d1": 5, "d2": 5}, 24, "PAPER",
                   "Sec_5(X^1) is a geometrically irreducible hypersurface (of degree 24)"),
            _check("esb_d2", "esb_d2", {"n": 5, "d1": 5, "r1": 3}, 5, "PAPER",
                   "a special Cremona transformation of P^5"),
            _check("esb_r2", "esb_r2", {"n": 5, "d1": 5, "d2": 5}, 3, "PAPER",
                   "the inverse is undefined along a codimension 2 determinantal scheme"),
        ]
        return ExampleInstance(
            f"quinto_p5_{which}", "DetMatrix", mp, field, Manifest(tuple(checks)), cfg.seed
        )

    return build


def _build_conic(which):
    data = CONIC_GENERAL if which == "general" else CONIC_SPECIAL

    def build(field, cfg):
        A = _matrix_from_data(data, field)
        mp = build_map(A)
        checks = [
            _check("bilinear_identity", "bilinear_identity", {}, True, "TRIVIAL"),
            _check(
                "curve_stratum",
                "stratum",
                {"r": 3},
                {"dimension": 1, "degree": 20, "genus": 26},
                "PAPER",
                "the locus rk B(y) = 3 is a smooth curve C of degree 20 and genus 26",
            ),
            _check("hilbert_burch", "hilbert_burch", {"m": 5, "n": 4}, [3, 10, 11],
                   "PAPER", "degree 10 and genus 11 having one apparent quadruple point"),
            _check(
                "probe_fiber_dim",
                "probe",
                {},
                {"kind": "fiber_dim", "dim": 1},
                "PAPER",
                "the general fiber is a 4-secant line to X^1",
            ),
            _check(
                "four_secant_length",
                "generic_fiber_intersection",
                {"samples": 5},
                {"dim": 0, "degree": 4},
                "PAPER",
                "the general fiber is a 4-secant line",
            ),
        ]
        if which == "general":
            checks.append(
                _check("no_rank2_point", "stratum_empty", {"r": 2}, True, "PAPER",
                       "the curve C is smooth")
            )
        else:
            checks.extend(
                [
                    _check(
                        "curve_singular_point",
                        "stratum_points",
                        {"r": 2},
                        {"points": ["(0:0:0:0:1)"], "certified_all_extensions": True,
                         "dimension": 0, "degree": 1},
                        "PAPER",
                        "the curve C has exactly one singular point at (0:0:0:0:1)",
                    ),
                    _check(
                        "solid_fiber",
                        "fiber_at",
                        {"point": "0:0:0:0:1"},
                        {"rank": 2, "fiber_dim": 3,
                         "equations": [[0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]]},
                        "PAPER",
                        "the fibre over (0:0:0:0:1) is isomorphic to P^3",
                    ),
                    _check(
                        "hyperplane_slice_plane_quartic",
                        "hyperplane_slice_quartic",
                        {"point": "0:0:0:0:1", "samples": 3},
                        True,
                        "PAPER",
                        "all these surfaces will contain a plane quartic curve",
                    ),
                ]
            )
        return ExampleInstance(
            f"conic_p5_{which}", "DetMatrix", mp, field, Manifest(tuple(checks)), cfg.seed
        )

    return build


def _rand_lines(rng, field, count, nvars):
    return [[rng.randrange(field.p) for _ in range(nvars)] for _ in range(count)]


def _build_del_pezzo(field, cfg):
    rng = random.Random(cfg.seed)
    X = None
    for _ in range(cfg.retry_budget):
        try:
            X = del_pezzo_quintic(field, _rand_lines(rng, field, 3, 6), cfg)
        except ConstructionFailed:
            continue
        verdict = smoothness_certificate(X, 3, cfg)
        if verdict.kind == "smooth":
            break
        X = None
    if X is None:
        raise ConstructionFailed("no smooth del Pezzo quintic within retries")
    Y = None
    for _ in range(cfg.retry_budget):
        cand = fano_cubic(X, _rand_lines(rng, field, 4, 6))
        verdict = smoothness_certificate(Ideal(field, 6, [cand]), 1, cfg)
        if verdict.kind == "smooth":
            Y = cand
            break
    if Y is None:
        raise ConstructionFailed("no smooth cubic through X within retries")
    mp = SystemMap(tuple(X.gens))
    checks = [
        _check("del_pezzo_profile", "ideal_profile", {"which": "X"},
               {"gens_degree_2": 5, "dimension": 2, "degree": 5},
               "PAPER", "the ideal of X is generated by 5 quadratic forms"),
        _check("del_pezzo_smooth", "aux_smooth", {"which": "X", "codim": 3}, "smooth",
               "PAPER", "Q3 ∩ M = Π ∪ X with X a smooth del Pezzo surface of degree 5"),
        _check("cubic_smooth", "aux_smooth", {"which": "Y", "codim": 1}, "smooth",
               "PAPER", "Y is non singular outside Π ∪ X and also non-singular along them"),
        _check("cubic_through_x", "cubic_membership", {}, True, "TRIVIAL"),
        _check("ruling_planes_at_most_two", "ruling_planes", {"which": "Y"},
               {"at_most": 2}, "PAPER",
               "such divisors contain at most two planes of type (1,0)"),
        _check("forced_plane_instance", "forced_ruling_plane", {}, True, "DERIVED"),
        _check("degenerate_cubic_flagged", "degenerate_ruling_cubic", {}, True, "TRIVIAL"),
        _check("resolution_deg9", "resolution_deg9", {}, [9, 8], "PAPER",
               "a degree 9 and sectional genus 8 normal surface"),
        _check("esb_hypersurface_d2", "esb_hyp_d2", {"n": 2, "d1": 2, "r1": 2}, 4,
               "PAPER", "given by quartics vanishing on Z, i.e. d2 = 4"),
        _check("secant_degree", "secant_degree", {"d1": 2, "d2": 4}, 7, "PAPER",
               "pi(E2) lies in |O_Y(7)|"),
        _check("liaison_deg9", "liaison", {"d": 4, "e": 4, "known": 7}, 9, "PAPER",
               "deg(Z) = 4*4 - 7 = 9"),
        _check("square_plus_t_10", "square_plus_t_contains", {"b": 10, "h": 2, "t": 6},
               True, "PAPER", "10 = h^2 + t with h = 2 and t = 6"),
    ]
    inst = ExampleInstance("del_pezzo_cubic", "FormSystem", mp, field,
                           Manifest(tuple(checks)), cfg.seed)
    inst.aux.update({"X": X, "Y": Y})
    return inst


def _octic_like(field, cfg, ambient, example_id):
    rng = random.Random(cfg.seed)
    nvars = ambient + 1
    cone = segre_cone(ambient, 0 if ambient == 6 else 1, field)
    built = None
    for _ in range(cfg.retry_budget):
        seeds = [_rand_lines(rng, field, 3, nvars), _rand_lines(rng, field, 3, nvars)]
        try:
            IX = divisor12_complete_intersection(cone, seeds, cfg)
        except ConstructionFailed:
            continue
        try:
            G = groebner_basis(IX, cfg.gb_pair_budget, cfg.gb_degree_cap)
        except BudgetExceeded:
            continue
        if ideal_dimension_piece(G, 2) != 7:
            continue
        hd = hilbert_data(G)
        want_dim = 2 if ambient == 6 else 3
        if (hd.projective_dimension, hd.degree) != (want_dim, 8):
            continue
        quadrics = [g for g in G.basis if g.degree == 2]
        if len(quadrics) != 7:
            continue
        built = (IX, G, quadrics, seeds)
        break
    if built is None:
        raise ConstructionFailed(f"no valid (1,2)x(1,2) intersection for {example_id}")
    IX, G, quadrics, seeds = built
    mp = SystemMap(tuple(quadrics))
    inst = ExampleInstance(example_id, "FormSystem", mp, field, Manifest(()), cfg.seed)
    inst.aux.update({"cone": cone, "ideal": IX, "gb": G, "seeds": seeds})
    return inst


def _build_semple_tyrrell(field, cfg):
    inst = _octic_like(field, cfg, 6, "semple_tyrrell")
    checks = [
        _check("octic_profile", "ideal_profile", {"which": "ideal"},
               {"gens_degree_2": 7, "dimension": 2, "degree": 8},
               "PAPER", "the surface X^1 has degree 8 and is cut out by 7 quadrics"),
        _check("h0_quadrics", "h0_ideal_aux", {"d": 2}, 7, "PAPER",
               "it is cut out by 7 quadrics"),
        _check("h0_interpolation_cross", "h0_points_aux", {"d": 2, "oversample": 24}, 7,
               "DERIVED"),
        _check("cone_profile", "cone_profile", {},
               {"dimension": 4, "degree": 3}, "DERIVED"),
        _check("esb_type_24", "esb_d2", {"n": 6, "d1": 2, "r1": 2}, 4, "PAPER",
               "a special Cremona transformation of type (2,4)"),
        _check("fibers_on_cone", "fiber_dims_on_cone", {"count": 10, "expected": 2},
               True, "PAPER",
               "quadric surfaces mapping to the points of a smooth quadric"),
        _check("cone_image_dim", "cone_image_dim", {"count": 12}, 2, "PAPER",
               "the cone W is contracted by phi onto a smooth quadric surface"),
    ]
    inst.manifest = Manifest(tuple(checks))
    return inst


def _build_p7_threefold(field, cfg):
    inst = _octic_like(field, cfg, 7, "p7_threefold")
    checks = [
        _check("threefold_profile", "ideal_profile", {"which": "ideal"},
               {"gens_degree_2": 7, "dimension": 3, "degree": 8},
               "PAPER", "a smooth 3-fold X of degree 8 whose ideal is generated by 7 degree 2 forms"),
        _check("h0_quadrics", "h0_ideal_aux", {"d": 2}, 7, "PAPER",
               "its ideal is generated by 7 degree 2 forms"),
        _check("cone_profile", "cone_profile", {},
               {"dimension": 5, "degree": 3}, "DERIVED"),
        _check("general_fiber_line", "general_fiber_dims", {"count": 20, "expected": 1},
               True, "PAPER", "the general fiber of phi is a line, necessarily a secant line"),
        _check("secant_length_two", "secant_line_lengths", {"count": 20},
               {"dim": 0, "degree": 2}, "PAPER",
               "through the general point of P^7 there passes a unique secant line"),
        _check("cone_fibers_dim3", "fiber_dims_on_cone", {"count": 10, "expected": 3},
               True, "PAPER",
               "for any p in the strict transform of M the fiber is a three dimensional quadric"),
        _check("blowup_degree_12", "blowup_quartic", {"deg_Y": 3, "deg_C": 8, "genus_C": 3},
               12, "PAPER", "16(H')^4 - 4(2H')(E')^3 + (E')^4 = 48 - 64 + 28 = 12"),
        _check("liaison_deg13", "liaison", {"d": 5, "e": 5, "known": 12}, 13, "PAPER",
               "Z in P^6 is a 4-fold of degree 13"),
    ]
    inst.manifest = Manifest(tuple(checks))
    return inst


_BUILDERS = {
    "segre_p5": _build_segre,
    "todd_room": _build_todd_room,
    "bordiga_random": _build_bordiga,
    "quinto_p5_plane": _build_quinto("plane"),
    "quinto_p5_solid": _build_quinto("solid"),
    "conic_p5_general": _build_conic("general"),
    "conic_p5_special": _build_conic("special"),
    "del_pezzo_cubic": _build_del_pezzo,
    "semple_tyrrell": _build_semple_tyrrell,
    "p7_threefold": _build_p7_threefold,
}


# ---------------------------------------------------------------------------
# check registry

def _x1_ideal(instance):
    mp = instance.payload
    return Ideal(instance.field, mp.m + 1, list(mp.minors))


def _chk_bilinear(instance, cfg):
    mp = instance.payload
    rebuilt = build_map(mp.A)  # raises IdentityFailure on any mismatch
    return rebuilt.B == mp.B


def _chk_b_matrix(instance, cfg):
    return _jsonable(polymatrix_to_json(instance.payload.B)["rows"])


def _chk_x1_hilbert(instance, cfg):
    G = groebner_basis(_x1_ideal(instance), cfg.gb_pair_budget, cfg.gb_degree_cap)
    hd = hilbert_data(G)
    return [hd.projective_dimension, hd.degree, hd.sectional_genus]


def _chk_hilbert_burch(instance, cfg, m, n):
    hd = relations.hilbert_burch_hp(m, n)
    return [hd.projective_dimension, hd.degree, hd.sectional_genus]


def _chk_smooth_x1(instance, cfg, codim):
    mp = instance.payload
    rng = random.Random(cfg.seed)
    pts = []
    try:
        pts = sample_det_variety_points(mp, 12, rng)
    except CremonaError:
        pts = []
    verdict = smoothness_certificate(_x1_ideal(instance), codim, cfg, pts)
    if verdict.kind == "unknown":
        raise BudgetExceeded(verdict.note)
    return verdict.kind


def _chk_eval_at(instance, cfg, point):
    p = ProjPoint.parse(instance.field, point)
    return str(eval_map(instance.payload, p))


def _chk_stratum(instance, cfg, r):
    st = rank_stratum(instance.payload, r, cfg)
    if st.hilbert is None:
        raise BudgetExceeded(st.note)
    out = {"dimension": st.hilbert.projective_dimension, "degree": st.hilbert.degree}
    if st.hilbert.sectional_genus is not None:
        out["genus"] = st.hilbert.sectional_genus
    return out


def _chk_stratum_points(instance, cfg, r):
    st = rank_stratum(instance.payload, r, cfg)
    if st.points is None:
        raise BudgetExceeded(st.note)
    level1 = next((pts for e, pts in st.points if e == 1), ())
    out = {
        "points": sorted(str(q) for q in level1),
        "certified_all_extensions": st.certified_all_extensions,
    }
    if st.hilbert is not None:
        out["dimension"] = st.hilbert.projective_dimension
        if st.hilbert.projective_dimension == 0 and "degree" in _expected_keys(instance, r):
            out["degree"] = st.hilbert.degree
    return out


def _expected_keys(instance, r):
    for chk in instance.manifest:
        if chk.op == "stratum_points" and chk.args.get("r") == r:
            return set(chk.expected)
    return set()


def _chk_stratum_empty(instance, cfg, r):
    st = rank_stratum(instance.payload, r, cfg)
    if st.hilbert is None:
        raise BudgetExceeded(st.note)
    return st.hilbert.projective_dimension == -1


def _chk_fiber_at(instance, cfg, point):
    p = ProjPoint.parse(instance.field, point)
    rep = fiber(instance.payload, p, cfg, with_hilbert=False)
    return {
        "rank": rep.rank,
        "fiber_dim": rep.fiber_dim,
        "equations": [[int(v) for v in row] for row in rep.subspace.equations],
    }


def _chk_fiber_intersection(instance, cfg, point):
    p = ProjPoint.parse(instance.field, point)
    rep = fiber(instance.payload, p, cfg, with_hilbert=True)
    hd = rep.intersection_hilbert
    if hd is None:
        raise BudgetExceeded("no intersection hilbert data")
    return {"dim": hd.projective_dimension, "degree": hd.degree}


def _chk_fiber_curve_smooth(instance, cfg, point):
    p = ProjPoint.parse(instance.field, point)
    rep = fiber(instance.payload, p, cfg, with_hilbert=False)
    G = groebner_basis(rep.intersection, cfg.gb_pair_budget, cfg.gb_degree_cap)
    basis = list(G.basis)
    if len(basis) != 1:
        return "not_principal"
    verdict = smoothness_certificate(
        Ideal(instance.field, rep.intersection.nvars, basis), 1, cfg
    )
    if verdict.kind == "unknown":
        raise BudgetExceeded(verdict.note)
    return verdict.kind


def _chk_plane_maps_to(instance, cfg, equations, target, samples):
    field = instance.field
    mp = instance.payload
    rng = random.Random(cfg.seed)
    tgt = ProjPoint.parse(field, target)
    hits = 0
    attempts = 0
    while hits < samples and attempts < samples * 60:
        attempts += 1
        coords = [field.zero if i in equations else field.random(rng) for i in range(mp.m + 1)]
        if all(field.is_zero(c) for c in coords):
            continue
        p = ProjPoint(field, coords)
        try:
            y = eval_map(mp, p)
        except BasePoint:
            continue
        if y != tgt:
            return False
        hits += 1
    return hits == samples


def _chk_h0_ideal(instance, cfg, d):
    return linear_system_dim(_x1_ideal(instance), d, cfg)


def _chk_h0_points(instance, cfg, d, oversample):
    from .poly import monomials_of_degree

    mp = instance.payload
    rng = random.Random(cfg.seed)
    need = len(monomials_of_degree(mp.m + 1, d)) + oversample
    pts = sample_det_variety_points(mp, need, rng)
    return linear_system_dim(pts, d, cfg)


def _chk_esb_d2(instance, cfg, n, d1, r1):
    return _jsonable(relations.esb_cremona_d2(n, d1, r1))


def _chk_esb_r2(instance, cfg, n, d1, d2):
    return _jsonable(relations.esb_cremona_r2(n, d1, d2))


def _chk_esb_hyp_d2(instance, cfg, n, d1, r1):
    return _jsonable(relations.esb_hypersurface_d2(n, d1, r1))


def _chk_secant_degree(instance, cfg, d1, d2):
    return relations.secant_hypersurface_degree(d1, d2)


def _chk_liaison(instance, cfg, d, e, known):
    return relations.liaison_degree(d, e, known)


def _chk_blowup_quartic(instance, cfg, deg_Y, deg_C, genus_C):
    return relations.blowup_quartic_selfint(deg_Y, deg_C, genus_C)


def _chk_square_plus_t_contains(instance, cfg, b, h, t):
    return (h, t) in relations.square_plus_t(b)


def _chk_resolution_deg9(instance, cfg):
    from .relations import ResolutionSpec, resolution_hp

    hd = resolution_hp(ResolutionSpec(4, (((4, 6),), ((5, 6),), ((6, 1),))))
    return [hd.degree, hd.sectional_genus]


def _chk_probe(instance, cfg):
    rng = random.Random(cfg.seed)
    verdict = birationality_probe(instance.payload, cfg, rng)
    return {"kind": verdict.kind, "dim": verdict.fiber_dim}


def _chk_exceptional_at_plane_point(instance, cfg, equations):
    field = instance.field
    mp = instance.payload
    rng = random.Random(cfg.seed + 1)
    for _ in range(200):
        coords = [field.zero if i in equations else field.random(rng) for i in range(mp.m + 1)]
        if all(field.is_zero(c) for c in coords):
            continue
        p = ProjPoint(field, coords)
        try:
            return exceptional_membership(mp, p)
        except BasePoint:
            continue
    raise BudgetExceeded("no plane point off the base locus found")


def _chk_exceptional_sample_rate(instance, cfg, samples, max_true):
    field = instance.field
    mp = instance.payload
    rng = random.Random(cfg.seed + 2)
    trues = 0
    done = 0
    attempts = 0
    while done < samples and attempts < samples * 40:
        attempts += 1
        coords = [field.random(rng) for _ in range(mp.m + 1)]
        if all(field.is_zero(c) for c in coords):
            continue
        try:
            if exceptional_membership(mp, ProjPoint(field, coords)):
                trues += 1
        except BasePoint:
            continue
        done += 1
    return done == samples and trues <= max_true


def _chk_segre_target_enumeration(instance, cfg, q):
    field = GF(q)
    A = _matrix_from_data(SEGRE_P5, field)
    mp = build_map(A)
    dims = set()
    inters = set()
    targets = 0
    for y in enumerate_projective_points(mp.n, field):
        rep = fiber(mp, y, cfg, with_hilbert=True)
        targets += 1
        dims.add(rep.fiber_dim)
        hd = rep.intersection_hilbert
        inters.add((hd.projective_dimension, hd.degree))
    return {
        "targets": targets,
        "fiber_dims": sorted(dims),
        "intersection": sorted([list(t) for t in inters]),
    }


def _chk_generic_fiber_intersection(instance, cfg, samples):
    field = instance.field
    mp = instance.payload
    rng = random.Random(cfg.seed + 3)
    results = set()
    done = 0
    attempts = 0
    while done < samples and attempts < samples * 60:
        attempts += 1
        coords = [field.random(rng) for _ in range(mp.m + 1)]
        if all(field.is_zero(c) for c in coords):
            continue
        p = ProjPoint(field, coords)
        try:
            y = eval_map(mp, p)
        except BasePoint:
            continue
        rep = fiber(mp, y, cfg, with_hilbert=True)
        if rep.fiber_dim != 1:
            continue  # exceptional sample
        hd = rep.intersection_hilbert
        results.add((hd.projective_dimension, hd.degree))
        done += 1
    if done < samples:
        raise BudgetExceeded("could not collect enough generic fibers")
    if len(results) != 1:
        return {"dim": None, "degree": None}
    dim, deg = results.pop()
    return {"dim": dim, "degree": deg}


def _chk_hyperplane_slice_quartic(instance, cfg, point, samples):
    """A generic hyperplane section of X^1 contains a plane quartic curve: the
    exceptional solid's quartic surface sliced by the hyperplane."""
    field = instance.field
    mp = instance.payload
    p = ProjPoint.parse(field, point)
    rep = fiber(mp, p, cfg, with_hilbert=False)
    G = groebner_basis(rep.intersection, cfg.gb_pair_budget, cfg.gb_degree_cap)
    basis = list(G.basis)
    if len(basis) != 1 or basis[0].degree != 4:
        return False
    quartic = basis[0]
    k = rep.fiber_dim + 1  # fiber coordinates
    rng = random.Random(cfg.seed + 4)
    for _ in range(samples):
        # a random hyperplane of the fiber P^3, sliced into plane coordinates
        while True:
            normal = [field.random(rng) for _ in range(k)]
            if not all(field.is_zero(c) for c in normal):
                break
        basis_rows = kernel([normal], field, ncols=k)
        lines = [
            Poly.linear_form(field, k - 1, [basis_rows[a][c] for a in range(k - 1)])
            for c in range(k)
        ]
        curve = quartic.substitute(lines)
        if curve.is_zero() or curve.degree != 4:
            return False
        hd = hilbert_data(
            groebner_basis(Ideal(field, k - 1, [curve]), cfg.gb_pair_budget, cfg.gb_degree_cap)
        )
        if (hd.projective_dimension, hd.degree) != (1, 4):
            return False
    return True


def _chk_ideal_profile(instance, cfg, which):
    ideal = instance.aux["ideal"] if which == "ideal" else instance.aux[which]
    G = instance.aux.get("gb")
    if G is None or which != "ideal":
        G = groebner_basis(ideal, cfg.gb_pair_budget, cfg.gb_degree_cap)
    hd = hilbert_data(G)
    return {
        "gens_degree_2": ideal_dimension_piece(G, 2),
        "dimension": hd.projective_dimension,
        "degree": hd.degree,
    }


def _chk_aux_smooth(instance, cfg, which, codim):
    obj = instance.aux[which]
    ideal = obj if isinstance(obj, Ideal) else Ideal(instance.field, obj.nvars, [obj])
    pts = None
    if which == "X":
        rng = random.Random(cfg.seed + 5)
        Q3 = instance.aux["X"].gens[3]
        pts = sample_segre_quadric_points(instance.field, Q3, 10, rng)
    verdict = smoothness_certificate(ideal, codim, cfg, pts)
    if verdict.kind == "unknown":
        raise BudgetExceeded(verdict.note)
    return verdict.kind


def _chk_cubic_membership(instance, cfg):
    X = instance.aux["X"]
    Y = instance.aux["Y"]
    G = groebner_basis(X, cfg.gb_pair_budget, cfg.gb_degree_cap)
    return normal_form(Y, G).is_zero()


def _chk_ruling_planes(instance, cfg, which):
    out = count_ruling_planes(instance.aux[which], instance.field)
    return {"at_most": 2} if (not out["degenerate"] and out["count"] <= 2) else out


def _chk_forced_ruling_plane(instance, cfg):
    # Q0..Q3 all lie in the ideal of the plane x0=x1=x2=0 (the ruling plane
    # at s=0), so any cubic combination contains that plane: count >= 1
    X = instance.aux["X"]
    rng = random.Random(cfg.seed + 6)
    Y = fano_cubic(X, _rand_lines(rng, instance.field, 4, 6))
    out = count_ruling_planes(Y, instance.field)
    return out["count"] >= 1


def _chk_degenerate_ruling_cubic(instance, cfg):
    field = instance.field
    segre = _segre_quadrics(field, 6)
    x = [Poly.variable(field, 6, i) for i in range(6)]
    Y = x[0] * segre[0] + x[4] * segre[1] + x[5] * segre[2]
    out = count_ruling_planes(Y, field)
    return out["degenerate"] and out["count"] == 3


def _chk_h0_ideal_aux(instance, cfg, d):
    return ideal_dimension_piece(instance.aux["gb"], d)


def _chk_h0_points_aux(instance, cfg, d, oversample):
    from .poly import monomials_of_degree

    field = instance.field
    ideal = instance.aux["ideal"]
    rng = random.Random(cfg.seed + 7)
    need = len(monomials_of_degree(ideal.nvars, d)) + oversample
    pts = sample_divisor_intersection_points(ideal, field, ideal.nvars, need, rng)
    if len(pts) < need:
        raise BudgetExceeded("not enough variety points sampled")
    return linear_system_dim(pts, d, cfg)


def _chk_cone_profile(instance, cfg):
    cone = instance.aux["cone"]
    G = groebner_basis(cone, cfg.gb_pair_budget, cfg.gb_degree_cap)
    hd = hilbert_data(G)
    return {"dimension": hd.projective_dimension, "degree": hd.degree}


def _chk_fiber_dims_on_cone(instance, cfg, count, expected):
    field = instance.field
    rng = random.Random(cfg.seed + 8)
    cone = instance.aux["cone"]
    X = instance.aux["ideal"]
    pts = sample_cone_points(field, cone.nvars, None, count * 3, rng, avoid=X)
    good = 0
    for p in pts:
        if not all(field.is_zero(g.evaluate(p, field)) for g in cone.gens):
            continue
        try:
            if fiber_dim_at(instance.payload, p) == expected:
                good += 1
        except BasePoint:
            continue
        if good >= count:
            return True
    return good >= count


def _chk_cone_image_dim(instance, cfg, count):
    field = instance.field
    rng = random.Random(cfg.seed + 9)
    cone = instance.aux["cone"]
    X = instance.aux["ideal"]
    pts = sample_cone_points(field, cone.nvars, None, count, rng, avoid=X)
    return image_dim_estimate(instance.payload, pts, restricted_to=cone)


def _chk_general_fiber_dims(instance, cfg, count, expected):
    field = instance.field
    rng = random.Random(cfg.seed + 10)
    mp = instance.payload
    nvars = mp.forms[0].nvars
    done = 0
    attempts = 0
    while done < count and attempts < count * 40:
        attempts += 1
        coords = [field.random(rng) for _ in range(nvars)]
        if all(field.is_zero(c) for c in coords):
            continue
        p = ProjPoint(field, coords)
        try:
            if fiber_dim_at(mp, p) != expected:
                return False
        except BasePoint:
            continue
        done += 1
    return done == count


def _chk_secant_line_lengths(instance, cfg, count):
    """The fiber line through a general point meets X in a length-2 scheme."""
    field = instance.field
    rng = random.Random(cfg.seed + 11)
    mp = instance.payload
    X = instance.aux["ideal"]
    nvars = mp.forms[0].nvars
    results = set()
    done = 0
    attempts = 0
    from .detmap import _jacobian_rows_at

    while done < count and attempts < count * 60:
        attempts += 1
        coords = [field.random(rng) for _ in range(nvars)]
        if all(field.is_zero(c) for c in coords):
            continue
        p = ProjPoint(field, coords)
        vals = [f.evaluate(p, field) for f in mp.forms]
        if all(field.is_zero(v) for v in vals):
            continue
        J = _jacobian_rows_at(mp.forms, p, field)
        tangent = kernel(J, field, ncols=nvars)
        if len(tangent) != 1:
            continue  # not on the open locus with a line fiber
        v = tangent[0]
        lines = [
            Poly.linear_form(field, 2, [p.coords[c], v[c]]) for c in range(nvars)
        ]
        gens = []
        for f in X.gens:
            g = f.substitute(lines)
            if not g.is_zero():
                gens.append(g)
        if not gens:
            continue
        hd = hilbert_data(
            groebner_basis(Ideal(field, 2, gens), cfg.gb_pair_budget, cfg.gb_degree_cap)
        )
        # the whole line must be one fiber: check a second line point maps equal
        second = ProjPoint(field, [field.add(a, b) for a, b in zip(p.coords, v)])
        try:
            if eval_map(mp, second) != eval_map(mp, p):
                continue
        except BasePoint:
            continue
        results.add((hd.projective_dimension, hd.degree))
        done += 1
    if done < count:
        raise BudgetExceeded("not enough secant-line fibers sampled")
    if len(results) != 1:
        return {"dim": None, "degree": None}
    dim, deg = results.pop()
    return {"dim": dim, "degree": deg}


CHECK_REGISTRY = {
    "bilinear_identity": _chk_bilinear,
    "b_matrix": _chk_b_matrix,
    "x1_hilbert": _chk_x1_hilbert,
    "hilbert_burch": _chk_hilbert_burch,
    "smooth_x1": _chk_smooth_x1,
    "eval_at": _chk_eval_at,
    "stratum": _chk_stratum,
    "stratum_points": _chk_stratum_points,
    "stratum_empty": _chk_stratum_empty,
    "fiber_at": _chk_fiber_at,
    "fiber_intersection": _chk_fiber_intersection,
    "fiber_curve_smooth": _chk_fiber_curve_smooth,
    "plane_maps_to": _chk_plane_maps_to,
    "h0_ideal": _chk_h0_ideal,
    "h0_points": _chk_h0_points,
    "esb_d2": _chk_esb_d2,
    "esb_r2": _chk_esb_r2,
    "esb_hyp_d2": _chk_esb_hyp_d2,
    "secant_degree": _chk_secant_degree,
    "liaison": _chk_liaison,
    "blowup_quartic": _chk_blowup_quartic,
    "square_plus_t_contains": _chk_square_plus_t_contains,
    "resolution_deg9": _chk_resolution_deg9,
    "probe": _chk_probe,
    "exceptional_at_plane_point": _chk_exceptional_at_plane_point,
    "exceptional_sample_rate": _chk_exceptional_sample_rate,
    "segre_target_enumeration": _chk_segre_target_enumeration,
    "generic_fiber_intersection": _chk_generic_fiber_intersection,
    "hyperplane_slice_quartic": _chk_hyperplane_slice_quartic,
    "ideal_profile": _chk_ideal_profile,
    "aux_smooth": _chk_aux_smooth,
    "cubic_membership": _chk_cubic_membership,
    "ruling_planes": _chk_ruling_planes,
    "forced_ruling_plane": _chk_forced_ruling_plane,
    "degenerate_ruling_cubic": _chk_degenerate_ruling_cubic,
    "h0_ideal_aux": _chk_h0_ideal_aux,
    "h0_points_aux": _chk_h0_points_aux,
    "cone_profile": _chk_cone_profile,
    "fiber_dims_on_cone": _chk_fiber_dims_on_cone,
    "cone_image_dim": _chk_cone_image_dim,
    "general_fiber_dims": _chk_general_fiber_dims,
    "secant_line_lengths": _chk_secant_line_lengths,
}


# ---------------------------------------------------------------------------
# manifest execution

@dataclass
class CheckResult:
    name: str
    expected: object
    actual: object
    passed: bool
    provenance: str
    anchor: str
    millis: int
    outcome: str = "done"  # "done" | "unknown" | "error"
    note: str = ""

    def to_json(self):
        return {
            "name": self.name,
            "expected": _jsonable(self.expected),
            "actual": _jsonable(self.actual),
            "pass": bool(self.passed),
            "provenance": self.provenance,
            "anchor": self.anchor,
            "millis": self.millis,
            "outcome": self.outcome,
            "note": self.note,
        }


@dataclass
class ManifestReport:
    example: str
    prime: int
    seed: int
    checks: list
    passed: bool
    budget_exhausted: bool

    def to_json(self):
        return {
            "example": self.example,
            "prime": self.prime,
            "seed": self.seed,
            "checks": [c.to_json() for c in self.checks],
            "pass": bool(self.passed),
            "budget_exhausted": bool(self.budget_exhausted),
        }


def verify_manifest(instance, cfg=None):
    """Execute every check of the instance manifest; budget errors become
    per-check Unknown outcomes and never abort the run."""
    cfg = cfg or RunConfig()
    results = []
    for chk in instance.manifest:
        fn = CHECK_REGISTRY[chk.op]
        t0 = time.monotonic()
        outcome = "done"
        note = ""
        try:
            actual = fn(instance, cfg, **chk.args)
            passed = _jsonable(actual) == _jsonable(chk.expected)
        except BudgetExceeded as exc:
            actual = None
            passed = False
            outcome = "unknown"
            note = str(exc)
        except CremonaError as exc:
            actual = None
            passed = False
            outcome = "error"
            note = f"{type(exc).__name__}: {exc}"
        millis = int((time.monotonic() - t0) * 1000) if cfg.timings else 0
        results.append(
            CheckResult(chk.name, chk.expected, actual, passed, chk.provenance,
                        chk.anchor, millis, outcome, note)
        )
    budget = any(r.outcome == "unknown" for r in results)
    passed = all(r.passed for r in results)
    return ManifestReport(
        instance.id, instance.field.char, instance.seed, results, passed, budget
    )


def verify_over_primes(example_id, cfg=None, primes=(101, 32003, 65537)):
    """Re-run one example's manifest over several primes and compare.

    Characteristic-zero claims are certified by agreement; any disagreement
    of a check's actual value across primes raises BadPrime.
    """
    from .errors import BadPrime

    cfg = cfg or RunConfig()
    reports = []
    for p in primes:
        sub = cfg.with_prime(p)
        inst = build_example(example_id, GF(p), sub)
        reports.append(verify_manifest(inst, sub))
    baseline = {c.name: _jsonable(c.actual) for c in reports[0].checks}
    for rep in reports[1:]:
        for c in rep.checks:
            if c.outcome != "done":
                continue
            if baseline.get(c.name, c.actual) != _jsonable(c.actual):
                raise BadPrime(
                    f"{example_id}:{c.name} disagrees between primes "
                    f"{reports[0].prime} and {rep.prime}"
                )
    return reports


def default_matrix_manifest(mp):
    """Manifest for an ad-hoc matrix: identity, smoothness, ESB, HP invariants."""
    m, n = mp.m, mp.n
    checks = [
        _check("bilinear_identity", "bilinear_identity", {}, True, "TRIVIAL"),
        _check("x1_smooth", "smooth_x1", {"codim": 2}, "smooth", "DERIVED"),
    ]
    hb = relations.hilbert_burch_hp(m, n)
    checks.append(
        _check("x1_hilbert", "x1_hilbert", {},
               [hb.projective_dimension, hb.degree, hb.sectional_genus], "DERIVED")
    )
    if m == n:
        d2 = relations.esb_cremona_d2(n, n, m - 2)
        checks.append(_check("esb_d2", "esb_d2", {"n": n, "d1": n, "r1": m - 2},
                             _jsonable(d2), "DERIVED"))
    return Manifest(tuple(checks))


# ---------------------------------------------------------------------------
# serialization

def _poly_to_json(f):
    return {
        "nvars": f.nvars,
        "terms": sorted([[list(e), int(c)] for e, c in f.terms.items()]),
    }


def _poly_from_json(obj, field):
    terms = {tuple(e): field.from_int(c) for e, c in obj["terms"]}
    return Poly(field, obj["nvars"], terms)


def instance_to_json(instance):
    out = {
        "id": instance.id,
        "kind": instance.kind,
        "field": {
            "characteristic": instance.field.char,
            "extension_degree": instance.field.degree,
            "modulus": list(getattr(instance.field, "modulus", ())),
        },
        "seed": instance.seed,
        "manifest": [
            {
                "name": c.name,
                "op": c.op,
                "args": _jsonable(c.args),
                "expected": _jsonable(c.expected),
                "provenance": c.provenance,
                "anchor": c.anchor,
            }
            for c in instance.manifest
        ],
    }
    if instance.kind == "DetMatrix":
        out["payload"] = polymatrix_to_json(instance.payload.A)
    else:
        out["payload"] = {"forms": [_poly_to_json(f) for f in instance.payload.forms]}
    return out


def instance_from_json(obj, cfg=None):
    """Rebuild an instance from JSON; known ids rebuild deterministically
    from the recorded seed and must reproduce the stored payload."""
    from .fields import FieldCfg

    cfg = cfg or RunConfig()
    fld = field_from_cfg(
        FieldCfg(
            obj["field"]["characteristic"],
            obj["field"]["extension_degree"],
            tuple(obj["field"]["modulus"]),
        )
    )
    cfg = RunConfig(
        prime=fld.char if fld.char else cfg.prime,
        extension_bound=cfg.extension_bound,
        gb_pair_budget=cfg.gb_pair_budget,
        gb_degree_cap=cfg.gb_degree_cap,
        enumeration_budget=cfg.enumeration_budget,
        trials=cfg.trials,
        seed=obj.get("seed", cfg.seed),
        retry_budget=cfg.retry_budget,
    )
    inst = build_example(obj["id"], fld, cfg)
    if instance_to_json(inst) != obj:
        raise ShapeError("stored instance does not round-trip from its seed")
    return inst
