"""Buchberger engine over finite fields with Gebauer-Moller pair elimination.

Monomial order is grevlex by default; a block elimination order is available
for tag-variable computations (ideal intersections and quotients).  Budgets
cap the number of processed S-pairs and the degree of any selected pair;
running out raises BudgetExceeded carrying partial data flagged unusable.

Basis computation is single-threaded per ideal; distinct ideals may be
processed concurrently since all inputs are immutable.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    BudgetExceeded,
    CharZeroUnsupported,
    IncompleteBasis,
)
from .fields import PrimeField
from .hilbert import HilbertData, hilbert_data_from_leading, hilbert_function
from .linalg import echelon_modp
from .poly import Poly, grevlex_key, monomials_of_degree

__all__ = [
    "Grevlex",
    "ElimOrder",
    "Ideal",
    "GroebnerBasis",
    "groebner_basis",
    "normal_form",
    "spoly",
    "projective_emptiness",
    "hilbert_data",
    "ideal_dimension_piece",
    "ideal_quotient",
    "ideal_intersection",
    "ideal_sum",
    "contains",
]

DEFAULT_PAIR_BUDGET = 200_000
DEFAULT_DEGREE_CAP = 30


class Grevlex:
    """Graded reverse lexicographic order."""

    name = "grevlex"

    @staticmethod
    def key(exp):
        return grevlex_key(exp)


class ElimOrder:
    """Block order eliminating the first ``nelim`` variables (grevlex in each block)."""

    def __init__(self, nelim):
        self.nelim = nelim
        self.name = f"elim{nelim}"

    def key(self, exp):
        k = self.nelim
        return (grevlex_key(exp[:k]), grevlex_key(exp[k:]))


@dataclass(frozen=True)
class Ideal:
    """A homogeneous ideal given by generators in one ring."""

    field: object
    nvars: int
    gens: tuple

    def __init__(self, field, nvars, gens):
        gens = tuple(g for g in gens if not g.is_zero())
        for g in gens:
            if g.nvars != nvars or g.field != field:
                raise ValueError("generator from a different ring")
            if not g.is_homogeneous():
                raise ValueError("generators must be homogeneous")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "gens", gens)

    def jacobian(self):
        """Rows of partials, one row per generator."""
        return [[g.derivative(i) for i in range(self.nvars)] for g in self.gens]


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis: monic, auto-reduced, canonically sorted."""

    order: str
    basis: tuple
    leading_ideal: tuple
    field: object = dc_field(repr=False, default=None)
    nvars: int = 0
    complete: bool = True


class _Elem:
    __slots__ = ("lm", "lc_inv", "tail", "terms", "sugar")

    def __init__(self, lm, lc_inv, tail, terms, sugar):
        self.lm = lm
        self.lc_inv = lc_inv
        self.tail = tail
        self.terms = terms
        self.sugar = sugar


def _monic_terms(terms, field, key):
    lm = max(terms, key=key)
    lc = terms[lm]
    if field.is_zero(field.sub(lc, field.one)):
        return dict(terms), lm
    inv = field.inv(lc)
    return {e: field.mul(inv, c) for e, c in terms.items()}, lm


def _reduce_modp(work, elems, key, p, divcache):
    """Full normal form of a term dict against a basis over GF(p)."""
    remainder = {}
    while work:
        lm = max(work, key=key)
        lc = work.pop(lm)
        red = divcache.get(lm, -1)
        if red == -1:
            red = None
            dlm = sum(lm)
            for g in elems:
                blm = g.lm
                if sum(blm) > dlm:
                    continue
                ok = True
                for a, b in zip(lm, blm):
                    if a < b:
                        ok = False
                        break
                if ok:
                    red = g
                    break
            divcache[lm] = red
        if red is None:
            remainder[lm] = lc
            continue
        shift = tuple(a - b for a, b in zip(lm, red.lm))
        c = lc * red.lc_inv % p
        if shift == (0,) * len(shift):
            for e, ce in red.tail:
                nv = (work.get(e, 0) - c * ce) % p
                if nv:
                    work[e] = nv
                else:
                    work.pop(e, None)
        else:
            for e, ce in red.tail:
                e2 = tuple(a + b for a, b in zip(e, shift))
                nv = (work.get(e2, 0) - c * ce) % p
                if nv:
                    work[e2] = nv
                else:
                    work.pop(e2, None)
    return remainder


def _reduce_generic(work, elems, key, field, divcache):
    remainder = {}
    zero = field.zero
    while work:
        lm = max(work, key=key)
        lc = work.pop(lm)
        red = divcache.get(lm, -1)
        if red == -1:
            red = None
            dlm = sum(lm)
            for g in elems:
                blm = g.lm
                if sum(blm) > dlm:
                    continue
                if all(a >= b for a, b in zip(lm, blm)):
                    red = g
                    break
            divcache[lm] = red
        if red is None:
            remainder[lm] = lc
            continue
        shift = tuple(a - b for a, b in zip(lm, red.lm))
        c = field.mul(lc, red.lc_inv)
        for e, ce in red.tail:
            e2 = tuple(a + b for a, b in zip(e, shift))
            nv = field.sub(work.get(e2, zero), field.mul(c, ce))
            if field.is_zero(nv):
                work.pop(e2, None)
            else:
                work[e2] = nv
    return remainder


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _buchberger(gen_polys, nvars, field, order, pair_budget, degree_cap):
    key = order.key
    prime = isinstance(field, PrimeField)
    p = field.p if prime else None

    elems = []
    heap = []
    dead = set()
    alive = {}
    seq = 0
    processed = 0
    divcache = {}

    def run_reduce(terms):
        if prime:
            return _reduce_modp(terms, elems, key, p, divcache)
        return _reduce_generic(terms, elems, key, field, divcache)

    def add_element(terms, sugar):
        nonlocal seq
        divcache.clear()
        monic, lm = _monic_terms(terms, field, key)
        tail = tuple((e, c) for e, c in sorted(monic.items(), key=lambda t: key(t[0]), reverse=True) if e != lm)
        h = len(elems)
        elems.append(_Elem(lm, field.one if not prime else 1, tail, monic, sugar))
        # Gebauer-Moller update of the pair set
        lmh = lm
        cand = []
        for g in range(h):
            t = _lcm(lmh, elems[g].lm)
            cand.append((t, g))
        kept = []
        rest = list(cand)
        while rest:
            t, g = rest.pop(0)
            coprime = all(
                not (a and b) for a, b in zip(lmh, elems[g].lm)
            )
            if coprime or (
                all(not (_divides(t2, t) and t2 != t) for t2, _ in rest)
                and all(not _divides(t2, t) for t2, _ in kept)
            ):
                kept.append((t, g))
        # B-criterion on old pairs
        for (i, j), t in list(alive.items()):
            if _divides(lmh, t) and _lcm(elems[i].lm, lmh) != t and _lcm(elems[j].lm, lmh) != t:
                dead.add((i, j))
                del alive[(i, j)]
        for t, g in kept:
            coprime = all(not (a and b) for a, b in zip(lmh, elems[g].lm))
            if coprime:
                continue
            sug = max(
                elems[g].sugar + sum(t) - sum(elems[g].lm),
                sugar + sum(t) - sum(lmh),
            )
            alive[(g, h)] = t
            heapq.heappush(heap, (sum(t), sug, key(t), seq, g, h))
            seq += 1

    # deterministic, lightly interreduced seeding
    seed = sorted(
        (g for g in gen_polys if not g.is_zero()),
        key=lambda g: (g.degree, key(g.leading()[0])),
    )
    for g in seed:
        nf = run_reduce(dict(g.terms))
        if nf:
            add_element(nf, max(sum(e) for e in nf))

    while heap:
        d, sug, tkey, s, i, j = heapq.heappop(heap)
        if (i, j) in dead:
            continue
        alive.pop((i, j), None)
        if d > degree_cap:
            raise BudgetExceeded(
                f"S-pair degree {d} exceeds cap {degree_cap}",
                partial=_finalize(elems, nvars, field, order, complete=False),
            )
        processed += 1
        if processed > pair_budget:
            raise BudgetExceeded(
                f"pair budget {pair_budget} exhausted",
                partial=_finalize(elems, nvars, field, order, complete=False),
            )
        f, g = elems[i], elems[j]
        t = _lcm(f.lm, g.lm)
        sf = tuple(a - b for a, b in zip(t, f.lm))
        sg = tuple(a - b for a, b in zip(t, g.lm))
        terms = {}
        if prime:
            for e, c in f.terms.items():
                e2 = tuple(a + b for a, b in zip(e, sf))
                terms[e2] = c
            for e, c in g.terms.items():
                e2 = tuple(a + b for a, b in zip(e, sg))
                nv = (terms.get(e2, 0) - c) % p
                if nv:
                    terms[e2] = nv
                else:
                    terms.pop(e2, None)
        else:
            zero = field.zero
            for e, c in f.terms.items():
                e2 = tuple(a + b for a, b in zip(e, sf))
                terms[e2] = c
            for e, c in g.terms.items():
                e2 = tuple(a + b for a, b in zip(e, sg))
                nv = field.sub(terms.get(e2, zero), c)
                if field.is_zero(nv):
                    terms.pop(e2, None)
                else:
                    terms[e2] = nv
        nf = run_reduce(terms)
        if nf:
            add_element(nf, sug)

    return _finalize(elems, nvars, field, order, complete=True)


def _finalize(elems, nvars, field, order, complete):
    key = order.key
    prime = isinstance(field, PrimeField)
    p = field.p if prime else None
    # minimal leading terms
    chosen = []
    for g in sorted(elems, key=lambda e: key(e.lm)):
        if not any(_divides(h.lm, g.lm) for h in chosen):
            chosen.append(g)
    # tail-reduce each against the others
    final = []
    for g in chosen:
        others = [h for h in chosen if h is not g]
        cache = {}
        if prime:
            nf = _reduce_modp(dict(g.terms), others, key, p, cache)
        else:
            nf = _reduce_generic(dict(g.terms), others, key, field, cache)
        monic, _ = _monic_terms(nf, field, key)
        final.append(Poly(field, nvars, monic, prune=False))
    final.sort(key=lambda f: key(f.leading(key)[0]))
    leading = tuple(f.leading(key)[0] for f in final)
    return GroebnerBasis(order.name, tuple(final), leading, field, nvars, complete)


def _degree_fill(gens, nvars, field, extra=5, row_factor=2.0):
    """Augment generators with a full degree piece when the ideal contains one.

    Walks the graded pieces I_d by exact mod-p linear algebra; when some
    I_d = S_d, every degree-d monomial lies in the ideal and is appended as a
    generator (the reduced basis is unchanged, Buchberger just gets there
    quickly).  Only sound/used for homogeneous input over a prime field.
    """
    if not isinstance(field, PrimeField) or not gens:
        return gens
    p = field.p
    by_deg = {}
    for g in gens:
        by_deg.setdefault(g.degree, []).append(g)
    dmin, dmax = min(by_deg), max(by_deg)
    prev_rows = None
    prev_monos = None
    for d in range(dmin, dmax + extra + 1):
        monos = monomials_of_degree(nvars, d)
        idx = {m: i for i, m in enumerate(monos)}
        blocks = []
        for g in by_deg.get(d, []):
            row = np.zeros(len(monos), dtype=np.int64)
            for e, c in g.terms.items():
                row[idx[e]] = c
            blocks.append(row.reshape(1, -1))
        if prev_rows is not None and prev_rows.shape[0]:
            for v in range(nvars):
                perm = np.fromiter(
                    (idx[m[:v] + (m[v] + 1,) + m[v + 1 :]] for m in prev_monos),
                    dtype=np.int64,
                    count=len(prev_monos),
                )
                shifted = np.zeros((prev_rows.shape[0], len(monos)), dtype=np.int64)
                shifted[:, perm] = prev_rows
                blocks.append(shifted)
        if not blocks:
            prev_rows = np.zeros((0, len(monos)), dtype=np.int64)
            prev_monos = monos
            continue
        stacked = np.vstack(blocks)
        cap = int(row_factor * len(monos)) + nvars
        if stacked.shape[0] > cap:
            stacked = stacked[:cap]
        rref, pivots = echelon_modp(stacked, p)
        if len(pivots) == len(monos):
            extra_gens = [
                Poly(field, nvars, {m: field.one}, prune=False) for m in monos
            ]
            return list(gens) + extra_gens
        prev_rows = rref
        prev_monos = monos
    return gens


def groebner_basis(
    ideal,
    pair_budget=DEFAULT_PAIR_BUDGET,
    degree_cap=DEFAULT_DEGREE_CAP,
    order=None,
    degree_fill=False,
):
    """Reduced Groebner basis of a homogeneous ideal over a finite field."""
    if ideal.field.char == 0:
        raise CharZeroUnsupported("groebner_basis needs finite field coefficients")
    order = order or Grevlex()
    gens = list(ideal.gens)
    if degree_fill:
        gens = _degree_fill(gens, ideal.nvars, ideal.field)
    return _buchberger(gens, ideal.nvars, ideal.field, order, pair_budget, degree_cap)


def groebner_list(
    gens,
    nvars,
    field,
    order=None,
    pair_budget=DEFAULT_PAIR_BUDGET,
    degree_cap=DEFAULT_DEGREE_CAP,
):
    """Engine entry for raw generator lists (tag computations may be inhomogeneous)."""
    if field.char == 0:
        raise CharZeroUnsupported("groebner needs finite field coefficients")
    order = order or Grevlex()
    return _buchberger(gens, nvars, field, order, pair_budget, degree_cap)


def normal_form(f, G, order=None):
    """Normal form of a polynomial against a (Groebner) basis."""
    order = order or Grevlex()
    key = order.key
    field = f.field
    elems = []
    for g in G.basis if isinstance(G, GroebnerBasis) else G:
        monic, lm = _monic_terms(dict(g.terms), field, key)
        tail = tuple((e, c) for e, c in monic.items() if e != lm)
        elems.append(_Elem(lm, 1 if isinstance(field, PrimeField) else field.one, tail, monic, sum(lm)))
    elems.sort(key=lambda e: key(e.lm))
    cache = {}
    if isinstance(field, PrimeField):
        nf = _reduce_modp(dict(f.terms), elems, key, field.p, cache)
    else:
        nf = _reduce_generic(dict(f.terms), elems, key, field, cache)
    return Poly(field, f.nvars, nf, prune=False)


def spoly(f, g, order=None):
    """The S-polynomial of two polynomials (monic normalization)."""
    order = order or Grevlex()
    key = order.key
    fe, fc = f.leading(key)
    ge, gc = g.leading(key)
    t = _lcm(fe, ge)
    field = f.field
    uf = Poly(field, f.nvars, {tuple(a - b for a, b in zip(t, fe)): field.inv(fc)}, prune=False)
    ug = Poly(field, f.nvars, {tuple(a - b for a, b in zip(t, ge)): field.inv(gc)}, prune=False)
    return uf * f - ug * g


def contains(G, f, order=None):
    """Ideal membership via normal form against a complete basis."""
    if isinstance(G, GroebnerBasis) and not G.complete:
        raise IncompleteBasis("membership needs a complete basis")
    return normal_form(f, G, order).is_zero()


def projective_emptiness(G):
    """True iff the leading ideal contains a pure power of every variable."""
    if not G.complete:
        raise IncompleteBasis("emptiness needs a complete basis")
    if not G.basis:
        return False
    nvars = G.nvars
    seen = set()
    for lm in G.leading_ideal:
        nz = [i for i, e in enumerate(lm) if e]
        if len(nz) == 0:
            return True  # unit ideal
        if len(nz) == 1:
            seen.add(nz[0])
    return len(seen) == nvars


def hilbert_data(G):
    """HilbertData of S/I computed combinatorially from the leading ideal."""
    if not G.complete:
        raise IncompleteBasis("hilbert data needs a complete basis")
    return hilbert_data_from_leading(list(G.leading_ideal), G.nvars)


def saturate_last_variable(G):
    """Groebner basis of (I : x_last^infinity) from a grevlex basis of I.

    Under grevlex with the last variable smallest, dividing every basis
    element by its full power of the last variable yields a grevlex basis of
    the saturation (Bayer's trick).
    """
    if not G.complete:
        raise IncompleteBasis("saturation needs a complete basis")
    if G.order != "grevlex":
        raise ValueError("saturation trick requires grevlex")
    field, nvars = G.field, G.nvars
    out = []
    for g in G.basis:
        k = min(e[-1] for e in g.terms)
        if k:
            shifted = {e[:-1] + (e[-1] - k,): c for e, c in g.terms.items()}
            out.append(Poly(field, nvars, shifted, prune=False))
        else:
            out.append(g)
    out.sort(key=lambda f: grevlex_key(f.leading()[0]))
    leading = tuple(f.leading()[0] for f in out)
    return GroebnerBasis("grevlex", tuple(out), leading, field, nvars, True)


def ideal_dimension_piece(G, d):
    """dim_k I_d for the (saturation-free) ideal with complete basis G."""
    if not G.complete:
        raise IncompleteBasis("graded piece needs a complete basis")
    total = math.comb(d + G.nvars - 1, G.nvars - 1)
    return total - int(hilbert_function(list(G.leading_ideal), G.nvars, d))


# ---------------------------------------------------------------------------
# quotients and intersections via a tag variable

def _with_tag(f, scale_by_tag):
    """Map f(x) into k[t, x]; multiply by t when scale_by_tag."""
    field = f.field
    out = {}
    for e, c in f.terms.items():
        out[((1,) if scale_by_tag else (0,)) + e] = c
    return Poly(field, f.nvars + 1, out, prune=False)


def _strip_tag(f):
    field = f.field
    out = {}
    for e, c in f.terms.items():
        out[e[1:]] = c
    return Poly(field, f.nvars - 1, out, prune=False)


def ideal_intersection(I, J, pair_budget=DEFAULT_PAIR_BUDGET, degree_cap=DEFAULT_DEGREE_CAP):
    """I cap J via elimination of one tag variable; inputs homogeneous."""
    field, nvars = I.field, I.nvars
    gens = [_with_tag(f, True) for f in I.gens]
    one_minus_t = Poly(field, nvars + 1, {(0,) * (nvars + 1): field.one, (1,) + (0,) * nvars: field.neg(field.one)}, prune=False)
    for g in J.gens:
        gens.append(one_minus_t * _with_tag(g, False))
    elim = ElimOrder(1)
    G = groebner_list(gens, nvars + 1, field, order=elim, pair_budget=pair_budget, degree_cap=degree_cap)
    out = []
    for f in G.basis:
        lead = f.leading(elim.key)[0]
        if lead[0] == 0:
            stripped = _strip_tag(f)
            out.extend(stripped.homogeneous_components())
    # homogeneous components are individually in the (homogeneous) intersection
    return Ideal(field, nvars, _dedupe(out))


def _dedupe(polys):
    seen = []
    for f in polys:
        if not f.is_zero() and not any(f == g for g in seen):
            seen.append(f)
    return seen


def ideal_sum(I, J):
    return Ideal(I.field, I.nvars, list(I.gens) + list(J.gens))


def ideal_quotient(I, J, pair_budget=DEFAULT_PAIR_BUDGET, degree_cap=DEFAULT_DEGREE_CAP):
    """(I : J), generator-by-generator via tag elimination, then intersected."""
    field, nvars = I.field, I.nvars
    result = None
    for g in J.gens:
        if g.degree == 0:
            colon = I  # (I : unit) = I
        else:
            inter = ideal_intersection(
                I, Ideal(field, nvars, [g]), pair_budget, degree_cap
            )
            colon = Ideal(field, nvars, [f.divexact(g) for f in inter.gens])
        if result is None:
            result = colon
        else:
            result = ideal_intersection(result, colon, pair_budget, degree_cap)
    if result is None:
        raise ValueError("quotient by the zero ideal")
    return result
