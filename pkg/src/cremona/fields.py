"""Exact coefficient fields: GF(p), small extensions GF(p^e), and the rationals.

Field elements are plain immutable values (int for prime fields, tuple of
ints for extensions, Fraction for the rationals) manipulated through a field
object.  Everything is hashable and safe to share between threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldError

__all__ = [
    "FieldCfg",
    "PrimeField",
    "ExtensionField",
    "RationalField",
    "GF",
    "QQ",
    "field_from_cfg",
    "is_prime",
    "sqrt_mod",
]


def is_prime(n):
    """Deterministic Miller-Rabin, adequate far beyond the primes used here."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sqrt_mod(a, p):
    """A square root of a mod prime p, or None if a is a non-residue."""
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


# ---------------------------------------------------------------------------
# univariate helpers over GF(p), used for modulus search and extension inverses;
# polynomials are lists of ints, ascending degree, no trailing zeros

def _utrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _umul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _utrim(out)


def _udivmod(a, b, p):
    a = list(a)
    binv = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = a[-1] * binv % p
        k = len(a) - len(b)
        q[k] = c
        for i, bi in enumerate(b):
            a[k + i] = (a[k + i] - c * bi) % p
        _utrim(a)
        if not a:
            break
    return _utrim(q), a


def _ugcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _udivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a


def _upowmod(base, e, mod, p):
    result = [1]
    base = _udivmod(base, mod, p)[1] if len(base) >= len(mod) else list(base)
    while e:
        if e & 1:
            result = _udivmod(_umul(result, base, p), mod, p)[1]
        base = _udivmod(_umul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _is_irreducible(coeffs, p):
    """Exhaustive test for a monic polynomial of degree <= 4 over GF(p)."""
    deg = len(coeffs) - 1
    if deg < 1 or coeffs[-1] != 1:
        return False
    if deg == 1:
        return True
    for x in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc == 0:
            return False
    if deg <= 3:
        return True
    # degree 4: also exclude a pair of quadratic factors
    xq2 = _upowmod([0, 1], p * p, coeffs, p)
    xq2 = _utrim([(xq2[0] if xq2 else 0)] + list(xq2[1:]))
    diff = list(xq2) + [0] * (2 - len(xq2))
    diff[1] = (diff[1] - 1) % p
    g = _ugcd(coeffs, _utrim(diff), p)
    return len(g) <= 1


def smallest_irreducible(p, e):
    """Lexicographically smallest monic irreducible of degree e over GF(p).

    Candidates x^e + c_{e-1} x^{e-1} + ... + c_0 are scanned in increasing
    order of the integer sum(c_i * p^i).
    """
    for count in range(p ** e):
        coeffs = []
        n = count
        for _ in range(e):
            coeffs.append(n % p)
            n //= p
        coeffs.append(1)
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise FieldError(f"no irreducible of degree {e} over GF({p})")


@dataclass(frozen=True)
class FieldCfg:
    """Serializable field description: characteristic, extension degree, modulus."""

    characteristic: int
    extension_degree: int = 1
    modulus: tuple = ()

    def __post_init__(self):
        if self.characteristic == 0:
            if self.extension_degree != 1 or self.modulus:
                raise FieldError("rationals take degree 1 and no modulus")
            return
        if not is_prime(self.characteristic):
            raise FieldError(f"{self.characteristic} is not prime")
        e = self.extension_degree
        if e < 1 or e > 4:
            raise FieldError("extension degrees 1..4 only")
        if e == 1:
            if self.modulus:
                raise FieldError("degree-1 field takes no modulus")
        else:
            if len(self.modulus) != e + 1:
                raise FieldError("modulus length must be degree + 1")
            if not _is_irreducible(list(self.modulus), self.characteristic):
                raise FieldError("modulus is reducible")


class PrimeField:
    """GF(p) with elements represented as ints in [0, p)."""

    __slots__ = ("p",)
    degree = 1

    def __init__(self, p):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p

    @property
    def char(self):
        return self.p

    @property
    def order(self):
        return self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return n % self.p

    def elements(self):
        return iter(range(self.p))

    def random(self, rng):
        return rng.randrange(self.p)

    def sqrt(self, a):
        return sqrt_mod(a, self.p)

    @property
    def cfg(self):
        return FieldCfg(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class ExtensionField:
    """GF(p^e), e in 2..4, elements as coefficient tuples of length e."""

    __slots__ = ("p", "e", "modulus", "_tails")

    def __init__(self, p, e, modulus=None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if e < 2 or e > 4:
            raise FieldError("extension degrees 2..4 only")
        if modulus is None:
            modulus = smallest_irreducible(p, e)
        modulus = tuple(m % p for m in modulus)
        if len(modulus) != e + 1 or not _is_irreducible(list(modulus), p):
            raise FieldError("modulus must be monic irreducible of matching degree")
        self.p, self.e, self.modulus = p, e, modulus
        # reductions of u^e .. u^(2e-2) against the modulus
        tails = []
        cur = [(-m) % p for m in modulus[:e]]  # u^e
        tails.append(tuple(cur))
        for _ in range(e - 2):
            nxt = [0] + cur[: e - 1]
            top = cur[e - 1]
            if top:
                nxt = [(nxt[i] + top * tails[0][i]) % p for i in range(e)]
            tails.append(tuple(nxt))
            cur = nxt
        self._tails = tails

    @property
    def char(self):
        return self.p

    @property
    def degree(self):
        return self.e

    @property
    def order(self):
        return self.p ** self.e

    @property
    def zero(self):
        return (0,) * self.e

    @property
    def one(self):
        return (1,) + (0,) * (self.e - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        p, e = self.p, self.e
        conv = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    conv[i + j] = (conv[i + j] + ai * bj) % p
        out = conv[:e]
        for k in range(e, 2 * e - 1):
            c = conv[k]
            if c:
                tail = self._tails[k - e]
                for i in range(e):
                    out[i] = (out[i] + c * tail[i]) % p
        return tuple(out)

    def inv(self, a):
        if all(x == 0 for x in a):
            raise ZeroDivisionError("inverse of zero")
        p = self.p
        # extended Euclid on (a, modulus)
        r0, r1 = list(self.modulus), _utrim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, r = _udivmod(r0, r1, p)
            r0, r1 = r1, r
            qs = _umul(q, s1, p)
            s2 = [(x - y) % p for x, y in itertools.zip_longest(s0, qs, fillvalue=0)]
            s0, s1 = s1, _utrim(s2)
        lead_inv = pow(r0[-1], p - 2, p)
        s0 = [x * lead_inv % p for x in s0]
        s0 = s0[: self.e] + [0] * (self.e - len(s0))
        return tuple(s0)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return all(x == 0 for x in a)

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.e - 1)

    def elements(self):
        yield from itertools.product(range(self.p), repeat=self.e)

    def random(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.e))

    @property
    def cfg(self):
        return FieldCfg(self.p, self.e, self.modulus)

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.p == self.p
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("GF", self.p, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.e})"


class RationalField:
    """The rationals, elements as Fraction."""

    __slots__ = ()
    degree = 1

    @property
    def char(self):
        return 0

    @property
    def order(self):
        return None

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return Fraction(n)

    def elements(self):
        raise FieldError("rationals are not enumerable")

    def random(self, rng):
        return Fraction(rng.randrange(-9, 10), rng.randrange(1, 10))

    @property
    def cfg(self):
        return FieldCfg(0)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def GF(p, e=1):
    """Finite field of order p^e (e <= 4, smallest-modulus convention)."""
    return PrimeField(p) if e == 1 else ExtensionField(p, e)


def field_from_cfg(cfg):
    if cfg.characteristic == 0:
        return QQ
    if cfg.extension_degree == 1:
        return PrimeField(cfg.characteristic)
    return ExtensionField(cfg.characteristic, cfg.extension_degree, cfg.modulus)
