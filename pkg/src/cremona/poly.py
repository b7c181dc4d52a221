"""Sparse multivariate polynomials, matrices of forms, projective points.

Polynomials are dicts mapping exponent tuples to nonzero field elements.
All values are immutable after construction; arithmetic returns fresh
objects, so sharing across workers is safe.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import ArityError, BudgetExceeded, ShapeError
from .fields import PrimeField

__all__ = [
    "Poly",
    "PolyMatrix",
    "ProjPoint",
    "grevlex_key",
    "monomials_of_degree",
    "enumerate_projective_points",
    "projective_count",
]


def grevlex_key(exp):
    """Sort key realizing graded reverse lexicographic order (larger key = larger monomial)."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


@lru_cache(maxsize=None)
def monomials_of_degree(nvars, d):
    """All exponent tuples of total degree d, grevlex-descending."""
    if nvars == 0:
        return ((),) if d == 0 else ()
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        exp = [0] * nvars
        for i in combo:
            exp[i] += 1
        out.append(tuple(exp))
    out.sort(key=grevlex_key, reverse=True)
    return tuple(out)


class Poly:
    """A sparse polynomial over a fixed field in a fixed number of variables."""

    __slots__ = ("field", "nvars", "terms", "_deg")

    def __init__(self, field, nvars, terms=None, prune=True):
        self.field = field
        self.nvars = nvars
        if terms and prune:
            terms = {e: c for e, c in terms.items() if not field.is_zero(c)}
        self.terms = terms or {}
        self._deg = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars, {}, prune=False)

    @classmethod
    def constant(cls, field, nvars, c):
        if isinstance(c, int):
            c = field.from_int(c)
        if field.is_zero(c):
            return cls.zero(field, nvars)
        return cls(field, nvars, {(0,) * nvars: c}, prune=False)

    @classmethod
    def variable(cls, field, nvars, i):
        exp = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(field, nvars, {exp: field.one}, prune=False)

    @classmethod
    def linear_form(cls, field, nvars, coeffs):
        if len(coeffs) != nvars:
            raise ArityError("coefficient vector length != variable count")
        terms = {}
        for i, c in enumerate(coeffs):
            if isinstance(c, int):
                c = field.from_int(c)
            if not field.is_zero(c):
                exp = tuple(1 if j == i else 0 for j in range(nvars))
                terms[exp] = c
        return cls(field, nvars, terms, prune=False)

    # -- structure ----------------------------------------------------------
    def is_zero(self):
        return not self.terms

    @property
    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if self._deg is None:
            self._deg = max((sum(e) for e in self.terms), default=-1)
        return self._deg

    def is_homogeneous(self):
        if not self.terms:
            return True
        degs = {sum(e) for e in self.terms}
        return len(degs) == 1

    def homogeneous_components(self):
        buckets = {}
        for e, c in self.terms.items():
            buckets.setdefault(sum(e), {})[e] = c
        return [Poly(self.field, self.nvars, b, prune=False) for d, b in sorted(buckets.items())]

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), self.field.zero)

    def leading(self, key=grevlex_key):
        """(exponent, coefficient) of the largest monomial, or None."""
        if not self.terms:
            return None
        e = max(self.terms, key=key)
        return e, self.terms[e]

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other):
        if self.nvars != other.nvars or self.field != other.field:
            raise ArityError("polynomials from different rings")

    def __add__(self, other):
        self._check(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = F.add(out.get(e, F.zero), c)
            if F.is_zero(v):
                out.pop(e, None)
            else:
                out[e] = v
        return Poly(F, self.nvars, out, prune=False)

    def __sub__(self, other):
        self._check(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = F.sub(out.get(e, F.zero), c)
            if F.is_zero(v):
                out.pop(e, None)
            else:
                out[e] = v
        return Poly(F, self.nvars, out, prune=False)

    def __neg__(self):
        F = self.field
        return Poly(F, self.nvars, {e: F.neg(c) for e, c in self.terms.items()}, prune=False)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        F = self.field
        out = {}
        if isinstance(F, PrimeField):
            p = F.p
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    v = (out.get(e, 0) + c1 * c2) % p
                    if v:
                        out[e] = v
                    else:
                        out.pop(e, None)
        else:
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    v = F.add(out.get(e, F.zero), F.mul(c1, c2))
                    if F.is_zero(v):
                        out.pop(e, None)
                    else:
                        out[e] = v
        return Poly(F, self.nvars, out, prune=False)

    def scale(self, c):
        F = self.field
        if isinstance(c, int):
            c = F.from_int(c)
        if F.is_zero(c):
            return Poly.zero(F, self.nvars)
        return Poly(F, self.nvars, {e: F.mul(c, v) for e, v in self.terms.items()}, prune=False)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = Poly.constant(self.field, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def monic(self, key=grevlex_key):
        lt = self.leading(key)
        if lt is None:
            return self
        F = self.field
        inv = F.inv(lt[1])
        return Poly(F, self.nvars, {e: F.mul(inv, c) for e, c in self.terms.items()}, prune=False)

    # -- evaluation & substitution -------------------------------------------
    def evaluate(self, point, field=None):
        """Value at the coordinates of ``point`` (a ProjPoint or a sequence).

        ``field`` may be an extension of this polynomial's prime field; the
        integer coefficients embed through field.from_int.
        """
        coords = point.coords if isinstance(point, ProjPoint) else tuple(point)
        if len(coords) != self.nvars:
            raise ArityError("point arity does not match variable count")
        F = field
        if F is None:
            F = point.field if isinstance(point, ProjPoint) else self.field
        if isinstance(F, PrimeField) and isinstance(self.field, PrimeField):
            p = F.p
            total = 0
            for exp, c in self.terms.items():
                v = c
                for x, e in zip(coords, exp):
                    if e:
                        v = v * pow(x, e, p) % p
                        if v == 0:
                            break
                total += v
            return total % p
        same_char = F.char == self.field.char
        total = F.zero
        for exp, c in self.terms.items():
            v = F.from_int(c) if same_char and isinstance(c, int) else c
            for x, e in zip(coords, exp):
                for _ in range(e):
                    v = F.mul(v, x)
                if F.is_zero(v):
                    break
            total = F.add(total, v)
        return total

    def derivative(self, i):
        F = self.field
        out = {}
        for exp, c in self.terms.items():
            e = exp[i]
            if e == 0:
                continue
            coef = F.mul(c, F.from_int(e))
            if F.is_zero(coef):
                continue
            nexp = exp[:i] + (e - 1,) + exp[i + 1 :]
            out[nexp] = F.add(out.get(nexp, F.zero), coef)
        return Poly(F, self.nvars, out)

    def substitute(self, args):
        """Value at polynomial arguments (one per variable, all in one target ring)."""
        if len(args) != self.nvars:
            raise ArityError("need one argument per variable")
        tgt_field, tgt_n = args[0].field, args[0].nvars
        out = Poly.zero(tgt_field, tgt_n)
        one = Poly.constant(tgt_field, tgt_n, 1)
        caches = [{0: one} for _ in range(self.nvars)]

        def power(i, e):
            cache = caches[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * args[i]
            return cache[e]

        for exp, c in self.terms.items():
            coeff = tgt_field.from_int(c) if isinstance(c, int) else c
            term = one.scale(coeff)
            for i, e in enumerate(exp):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def divexact(self, g, key=grevlex_key):
        """Exact quotient self / g; raises ValueError if the division is not exact."""
        if g.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        F = self.field
        glt = g.leading(key)
        ge, gc = glt
        gcinv = F.inv(gc)
        q = {}
        r = dict(self.terms)
        while r:
            le = max(r, key=key)
            lc = r[le]
            shift = tuple(a - b for a, b in zip(le, ge))
            if any(s < 0 for s in shift):
                raise ValueError("division is not exact")
            c = F.mul(lc, gcinv)
            q[shift] = c
            for e2, c2 in g.terms.items():
                e = tuple(a + b for a, b in zip(e2, shift))
                v = F.sub(r.get(e, F.zero), F.mul(c, c2))
                if F.is_zero(v):
                    r.pop(e, None)
                else:
                    r[e] = v
        return Poly(F, self.nvars, q, prune=False)

    # -- misc -----------------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return self.render()

    def render(self, names="x"):
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[exp]
            mono = "*".join(
                f"{names}{i}" if e == 1 else f"{names}{i}^{e}"
                for i, e in enumerate(exp)
                if e
            )
            cs = str(c)
            if mono:
                parts.append(mono if cs == "1" else f"{cs}*{mono}")
            else:
                parts.append(cs)
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self.render()})"


class PolyMatrix:
    """A rows x cols matrix of polynomials over one ring."""

    __slots__ = ("field", "nvars", "rows", "cols", "entries")

    def __init__(self, entries):
        if not entries or not entries[0]:
            raise ShapeError("empty matrix")
        first = entries[0][0]
        self.field, self.nvars = first.field, first.nvars
        self.rows, self.cols = len(entries), len(entries[0])
        for row in entries:
            if len(row) != self.cols:
                raise ShapeError("ragged matrix")
            for e in row:
                if e.nvars != self.nvars or e.field != self.field:
                    raise ArityError("matrix entries from different rings")
        self.entries = tuple(tuple(row) for row in entries)

    def is_linear_forms(self):
        return all(e.degree <= 1 for row in self.entries for e in row)

    def evaluate_at(self, point, field=None):
        """Scalar matrix of entry values at a point."""
        F = field
        if F is None:
            F = point.field if isinstance(point, ProjPoint) else self.field
        return [[e.evaluate(point, F) for e in row] for row in self.entries]

    def submatrix(self, row_idx, col_idx):
        return PolyMatrix([[self.entries[i][j] for j in col_idx] for i in row_idx])

    def transpose(self):
        return PolyMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols} over {self.field!r})"


class ProjPoint:
    """A projective point, canonically normalized: first nonzero coordinate is 1."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        vals = []
        for c in coords:
            vals.append(field.from_int(c) if isinstance(c, int) else c)
        pivot = next((i for i, c in enumerate(vals) if not field.is_zero(c)), None)
        if pivot is None:
            raise ShapeError("projective point needs a nonzero coordinate")
        inv = field.inv(vals[pivot])
        self.field = field
        self.coords = tuple(field.mul(inv, c) for c in vals)

    @property
    def dim(self):
        return len(self.coords) - 1

    @classmethod
    def parse(cls, field, text):
        parts = text.strip().strip("()").split(":")
        try:
            ints = [int(t) for t in parts]
        except ValueError as exc:
            raise ArityError(f"cannot parse point {text!r}") from exc
        return cls(field, ints)

    def __eq__(self, other):
        return (
            isinstance(other, ProjPoint)
            and self.field == other.field
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.field, self.coords))

    def __str__(self):
        return "(" + ":".join(str(c) for c in self.coords) + ")"

    def __repr__(self):
        return f"ProjPoint{self}"


def projective_count(n, q):
    """Number of points of P^n over a field with q elements."""
    return (q ** (n + 1) - 1) // (q - 1)


def enumerate_projective_points(n, field, budget=None):
    """Yield every point of P^n(F_q) exactly once, lexicographic in normalized coordinates.

    Raises BudgetExceeded up front when the point count overruns the budget.
    """
    q = field.order
    if q is None:
        raise BudgetExceeded("cannot enumerate points over an infinite field")
    total = projective_count(n, q)
    if budget is not None and total > budget:
        raise BudgetExceeded(f"P^{n}(F_{q}) has {total} points > budget {budget}")
    elems = sorted(field.elements())
    one = field.one
    for pivot in range(n, -1, -1):
        prefix = (field.zero,) * pivot + (one,)
        tail_len = n - pivot
        for tail in itertools.product(elems, repeat=tail_len):
            pt = ProjPoint.__new__(ProjPoint)
            pt.field = field
            pt.coords = prefix + tail
            yield pt
