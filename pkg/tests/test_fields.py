import random

import pytest

from cremona.errors import FieldError
from cremona.fields import (
    GF,
    QQ,
    ExtensionField,
    FieldCfg,
    PrimeField,
    field_from_cfg,
    is_prime,
    smallest_irreducible,
    sqrt_mod,
)


def test_is_prime_basics():
    assert is_prime(2) and is_prime(101) and is_prime(32003) and is_prime(65537)
    assert not is_prime(1) and not is_prime(91) and not is_prime(32001)


def test_prime_field_ops():
    F = GF(101)
    assert F.add(100, 2) == 1
    assert F.mul(50, 50) == 2500 % 101
    assert F.inv(3) * 3 % 101 == 1
    assert F.neg(1) == 100
    assert F.from_int(-1) == 100
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_field_axioms_sampled():
    rng = random.Random(7)
    for F in (GF(101), GF(32003), GF(3, 2), GF(2, 3), QQ):
        for _ in range(1000 if F.order in (101, 32003) else 200):
            a, b, c = F.random(rng), F.random(rng), F.random(rng)
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
            assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
            assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))


def test_every_nonzero_element_has_inverse_small_fields():
    for F in (GF(7), GF(101), GF(3, 2), GF(2, 4), GF(5, 3)):
        count = 0
        for a in F.elements():
            if F.is_zero(a):
                continue
            assert F.mul(a, F.inv(a)) == F.one
            count += 1
        assert count == F.order - 1


def test_extension_field_construction():
    F9 = GF(3, 2)
    assert F9.order == 9
    assert len(list(F9.elements())) == 9
    # modulus is monic irreducible of degree 2
    assert len(F9.modulus) == 3 and F9.modulus[-1] == 1
    F64 = GF(2, 3)
    assert F64.order == 8


def test_smallest_irreducible_is_irreducible_and_minimal():
    mod = smallest_irreducible(3, 2)
    assert mod == (1, 0, 1)  # x^2 + 1 over GF(3)
    mod4 = smallest_irreducible(2, 4)
    # x^4 + x + 1 is the classical smallest over GF(2)
    assert mod4 == (1, 1, 0, 0, 1)


def test_field_cfg_round_trip():
    for F in (GF(101), GF(3, 3), QQ):
        cfg = F.cfg
        assert field_from_cfg(cfg) == F


def test_field_cfg_validation():
    with pytest.raises(FieldError):
        FieldCfg(15)
    with pytest.raises(FieldError):
        FieldCfg(3, 2, (1, 1, 1))  # x^2+x+1 has root 1 mod 3
    with pytest.raises(FieldError):
        ExtensionField(3, 2, (1, 1, 1))


def test_sqrt_mod():
    for p in (101, 32003, 65537):
        found = 0
        for a in range(1, 60):
            r = sqrt_mod(a, p)
            if r is not None:
                assert r * r % p == a % p
                found += 1
        assert found > 0


def test_rationals():
    from fractions import Fraction

    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert QQ.inv(Fraction(-3, 7)) == Fraction(-7, 3)
    assert QQ.char == 0
