import random

import pytest

from regcoh.errors import RingMismatchError, UnsupportedRingError
from regcoh.rings import (
    FiniteFieldRing,
    IntegerModRing,
    IntegerRing,
    PrimeFieldRing,
    ProductRing,
    QQ,
    RingAut,
    ZZ,
    is_idempotent_complete,
    ring_arith,
)

F4 = FiniteFieldRing(2, 2)
Z2 = IntegerModRing(2)
PROD2 = ProductRing(ZZ, 2)


def test_integer_arith():
    assert ring_arith(ZZ, 2, 3, "mul") == 6
    assert ring_arith(ZZ, 2, 3, "sub") == -1


def test_mod2_characteristic():
    assert ring_arith(Z2, 1, 1, "add") == 0


def test_f4_generator_square():
    # independent oracle: multiply x*x in F_2[x] and reduce by x^2+x+1 by hand
    assert F4.modulus == [1, 1, 1]
    x = F4.generator()
    # x*x = x^2 = -(x+1) = x+1 over F_2
    assert ring_arith(F4, x, x, "mul") == (1, 1)


def test_f4_field_axioms_exhaustive():
    elems = [(a, b) for a in range(2) for b in range(2)]
    for a in elems:
        for b in elems:
            assert F4.mul(a, b) == F4.mul(b, a)
            for c in elems:
                assert F4.mul(a, F4.add(b, c)) == F4.add(F4.mul(a, b), F4.mul(a, c))
        if a != F4.zero():
            assert F4.mul(a, F4.inv(a)) == F4.one()


def test_f8_f9_inverses():
    for ring in (FiniteFieldRing(2, 3), FiniteFieldRing(3, 2)):
        rng = random.Random(7)
        for _ in range(50):
            a = ring.random_element(rng)
            if not ring.is_zero(a):
                assert ring.mul(a, ring.inv(a)) == ring.one()


def test_mixed_ring_rejected():
    with pytest.raises(RingMismatchError):
        ring_arith(ZZ, 2, QQ.of_int(3), "add")


def test_rotation_swap():
    rot = RingAut(PROD2, "rotation", 1)
    assert rot.apply((1, 0)) == (0, 1)
    assert rot.apply(rot.apply((5, -3))) == (5, -3)
    assert rot.power(2).is_identity()


def test_frobenius_inverse_roundtrip():
    fr = RingAut(F4, "frobenius", 1)
    x = F4.generator()
    assert fr.apply(x) == F4.add(x, F4.one())  # x^2 = x+1 in F_4
    assert fr.inverse().apply(fr.apply(x)) == x
    # frobenius is a homomorphism
    rng = random.Random(3)
    for _ in range(20):
        a, b = F4.random_element(rng), F4.random_element(rng)
        assert fr.apply(F4.mul(a, b)) == F4.mul(fr.apply(a), fr.apply(b))
        assert fr.apply(F4.add(a, b)) == F4.add(fr.apply(a), fr.apply(b))


def test_aut_kind_validation():
    with pytest.raises(UnsupportedRingError):
        RingAut(ZZ, "frobenius", 1)
    with pytest.raises(UnsupportedRingError):
        RingAut(QQ, "rotation", 1)


def test_idempotent_completeness_predicate():
    assert is_idempotent_complete(ZZ)
    assert is_idempotent_complete(QQ)
    assert is_idempotent_complete(PrimeFieldRing(5))
    assert is_idempotent_complete(IntegerModRing(4))  # local: Z/2^2
    assert is_idempotent_complete(IntegerModRing(9))
    assert not is_idempotent_complete(IntegerModRing(6))
    assert not is_idempotent_complete(ProductRing(QQ, 2))


def test_prime_validation():
    with pytest.raises(ValueError):
        PrimeFieldRing(4)
    with pytest.raises(ValueError):
        IntegerModRing(1)
