import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wittlab.errors import InvalidRing, NotDivisible, NotUnique
from wittlab.rings import (
    QQ,
    ZZ,
    FiniteField,
    GaloisRing,
    IntegersLocalized,
    IntegersMod,
    Polynomial,
    PrimeField,
    QuotientRing,
    ring_from_json,
)

FINITE = [IntegersMod(12), PrimeField(5), FiniteField(2, 2), FiniteField(3, 2), QuotientRing(2, [0, 0, 0, 1]),
          GaloisRing(2, 2, 2)]
ALL = FINITE + [ZZ, QQ, IntegersLocalized([2, 3]), Polynomial(ZZ, ["x", "y"])]


@pytest.mark.parametrize("R", ALL, ids=lambda R: R.name)
def test_json_round_trip(R):
    S = ring_from_json(R.to_json())
    assert S == R
    rng = random.Random(0)
    for _ in range(20):
        a = R.random(rng, 7)
        assert S.decode(R.encode(a)) == a
        assert R.parse(R.format(a)) == a


@pytest.mark.parametrize("R", FINITE, ids=lambda R: R.name)
def test_finite_rings_are_closed_and_counted(R):
    elems = list(R.elements())
    assert len(elems) == len(set(elems)) == R.size()
    rng = random.Random(1)
    for _ in range(50):
        a, b, c = (rng.choice(elems) for _ in range(3))
        assert R.mul(R.add(a, b), c) == R.add(R.mul(a, c), R.mul(b, c))
        assert R.add(a, R.neg(a)) == R.zero()


@pytest.mark.parametrize("F", [FiniteField(2, 3), FiniteField(3, 2), FiniteField(5, 2)], ids=lambda F: F.name)
def test_finite_field_inverses_and_frobenius(F):
    phi = F.frobenius(F.p)
    images = {phi(a) for a in F.elements()}
    assert len(images) == F.size()
    for a in F.elements():
        if not F.is_zero(a):
            assert F.mul(a, F.inverse(a)) == F.one()
        assert F.frobenius_inverse(phi(a)) == a


def test_galois_ring_of_degree_one_is_integers_mod():
    GR = GaloisRing(2, 2, 1)
    assert GR.size() == 4
    assert GR.residue_field.size() == 2
    for a in GR.elements():
        t = GR.teichmuller(a)
        assert GR.pow(t, 2) == t


def test_galois_ring_teichmuller_is_multiplicative():
    GR = GaloisRing(3, 3, 2)
    F = GR.residue_field
    elems = list(F.elements())
    for a in elems[:5]:
        for b in elems[:5]:
            lhs = GR.teichmuller(GR.lift(F.mul(a, b)))
            rhs = GR.mul(GR.teichmuller(GR.lift(a)), GR.teichmuller(GR.lift(b)))
            assert lhs == rhs


def test_exact_division_errors():
    R = IntegersMod(16)
    with pytest.raises(NotUnique):
        R.div_exact(6, 2)
    with pytest.raises(NotDivisible):
        R.div_exact(7, 2)
    assert R.div_exact(9, 3) == 3
    L = IntegersLocalized([2])
    assert L.div_exact(L.from_int(3), 2) == Fraction(3, 2)
    with pytest.raises(NotDivisible):
        L.div_exact(L.one(), 3)
    with pytest.raises(NotDivisible):
        ZZ.div_exact(5, 2)


def test_localized_ring_membership():
    L = IntegersLocalized([2, 3])
    assert L.int_is_unit(6) and not L.int_is_unit(5)
    assert L.parse("5/12") == Fraction(5, 12)


def test_polynomial_parse_and_frobenius():
    A = Polynomial(ZZ, ["x", "y"])
    f = A.parse("x^2 - 3*x*y + 2")
    assert A.parse(A.format(f)) == f and A.format(f) == "-3*x*y+x^2+2"
    assert A.frobenius(2)(f) == A.parse("x^4 - 3*x^2*y^2 + 2")


def test_bad_descriptors():
    with pytest.raises(InvalidRing):
        ring_from_json({"kind": "Octonions"})
    with pytest.raises(InvalidRing):
        ring_from_json({"kind": "IntegersMod"})


@given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9))
def test_integers_mod_matches_python(a, b):
    R = IntegersMod(2**16)
    assert R.mul(R.from_int(a), R.from_int(b)) == (a * b) % 2**16
    assert R.add(R.from_int(a), R.from_int(b)) == (a + b) % 2**16
