"""Hilbert series of monomial ideals and Hilbert-polynomial bookkeeping.

The numerator N(t) with HS(S/I) = N(t)/(1-t)^nvars is computed from the
leading monomial ideal by the usual pivot-variable recursion.  Degree,
projective dimension and sectional genus are read off the polynomial:
degree = leading coefficient times dim!, and iterating the difference
operator HP(t) - HP(t-1) down to dimension 1 leaves d*t + (1 - genus).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, DimensionTooLow

__all__ = [
    "HilbertData",
    "hilbert_numerator",
    "hilbert_data_from_leading",
    "hilbert_data_from_hp",
    "hilbert_function",
    "hp_difference",
    "binom_poly",
    "sectional_genus",
]


@dataclass(frozen=True)
class HilbertData:
    """Hilbert polynomial (ascending rational coefficients) with extracted invariants."""

    hilbert_polynomial: tuple
    projective_dimension: int
    degree: int
    sectional_genus: int | None = None

    def hp_at(self, t):
        return sum(c * t ** i for i, c in enumerate(self.hilbert_polynomial))


def _minimalize(monos):
    """Minimal generators of the monomial ideal spanned by ``monos``."""
    monos = sorted(set(monos), key=sum)
    out = []
    for m in monos:
        if not any(all(a >= b for a, b in zip(m, g)) for g in out):
            out.append(m)
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def hilbert_numerator(monos, nvars, node_budget=500_000):
    """Coefficients of N(t) where HS of S/(monomial ideal) = N(t)/(1-t)^nvars."""
    nodes = [0]

    def rec(gens):
        nodes[0] += 1
        if nodes[0] > node_budget:
            raise BudgetExceeded("hilbert numerator recursion too large")
        if not gens:
            return [1]
        if any(sum(m) == 0 for m in gens):
            return [0]
        mixed = [m for m in gens if sum(1 for e in m if e) > 1]
        if not mixed:
            out = [1]
            for m in gens:
                d = sum(m)
                factor = [1] + [0] * (d - 1) + [-1]
                out = _poly_mul(out, factor)
            return out
        # pivot on the variable occurring in the most mixed generators
        counts = [0] * nvars
        for m in mixed:
            for i, e in enumerate(m):
                if e:
                    counts[i] += 1
        j = counts.index(max(counts))
        plus = _minimalize(
            [m for m in gens if m[j] == 0]
            + [tuple(1 if i == j else 0 for i in range(nvars))]
        )
        quot = _minimalize(
            [m[:j] + (max(m[j] - 1, 0),) + m[j + 1 :] for m in gens]
        )
        a = rec(tuple(plus))
        b = rec(tuple(quot))
        out = [0] * max(len(a), len(b) + 1)
        for i, x in enumerate(a):
            out[i] += x
        for i, x in enumerate(b):
            out[i + 1] += x
        while out and out[-1] == 0:
            out.pop()
        return out

    return rec(tuple(_minimalize(monos)))


def binom_poly(shift, r):
    """Coefficients (ascending, Fractions) of C(t + shift, r) as a polynomial in t."""
    out = [Fraction(1)]
    for i in range(r):
        # multiply by (t + shift - i)
        nxt = [Fraction(0)] * (len(out) + 1)
        for k, c in enumerate(out):
            nxt[k] += c * (shift - i)
            nxt[k + 1] += c
        out = nxt
    f = Fraction(1, math.factorial(r))
    return [c * f for c in out]


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def hp_difference(coeffs):
    """Coefficients of HP(t) - HP(t-1)."""
    shifted = [Fraction(0)] * len(coeffs)
    for i, c in enumerate(coeffs):
        # expand c * (t-1)^i
        for k in range(i + 1):
            shifted[k] += c * math.comb(i, k) * (-1) ** (i - k)
    return _trim([a - b for a, b in zip(coeffs, shifted)])


def sectional_genus(hd):
    """Genus read from the curve section; requires projective dimension >= 1."""
    if hd.projective_dimension < 1:
        raise DimensionTooLow("sectional genus needs dimension >= 1")
    coeffs = list(hd.hilbert_polynomial)
    for _ in range(hd.projective_dimension - 1):
        coeffs = hp_difference(coeffs)
    const = coeffs[0] if coeffs else Fraction(0)
    g = 1 - const
    if g.denominator != 1:
        raise ValueError("non-integral genus; corrupted Hilbert data")
    return int(g)


def hilbert_data_from_hp(coeffs):
    """HilbertData from an explicit Hilbert polynomial (rational coefficients)."""
    coeffs = _trim([Fraction(c) for c in coeffs])
    if not coeffs:
        return HilbertData((), -1, 0, None)
    r = len(coeffs) - 1
    degree = coeffs[-1] * math.factorial(r)
    if degree.denominator != 1:
        raise ValueError("leading coefficient times dim! is not integral")
    hd = HilbertData(tuple(coeffs), r, int(degree), None)
    genus = sectional_genus(hd) if r >= 1 else None
    return HilbertData(tuple(coeffs), r, int(degree), genus)


def hilbert_data_from_leading(monos, nvars):
    """HilbertData of S/I from the leading monomial ideal of I."""
    numer = hilbert_numerator(monos, nvars)
    # cancel factors of (1 - t): synthetic division as long as N(1) == 0
    s = 0
    numer = _trim(numer)
    if not numer:
        return HilbertData((), -1, 0, None)
    while sum(numer) == 0:
        # divide by (1 - t): q_k = sum_{i<=k} n_i
        acc = 0
        q = []
        for c in numer[:-1]:
            acc += c
            q.append(acc)
        numer = _trim(q)
        s += 1
        if not numer:
            return HilbertData((), -1, 0, None)
    r = nvars - s - 1
    if r < 0:
        return HilbertData((), -1, 0, None)
    coeffs = [Fraction(0)] * (r + 1)
    for k, c in enumerate(numer):
        for i, b in enumerate(binom_poly(r - k, r)):
            coeffs[i] += c * b
    return hilbert_data_from_hp(coeffs)


def hilbert_function(monos, nvars, d):
    """Exact Hilbert function of S/I at degree d, from the leading monomial ideal."""
    numer = hilbert_numerator(monos, nvars)
    total = 0
    for k, c in enumerate(numer):
        if d - k >= 0:
            total += c * math.comb(d - k + nvars - 1, nvars - 1)
    return total
