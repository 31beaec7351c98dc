import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wittlab.errors import BadTruncationPair, MismatchedShape, NotInGhostImage, PrimeNotInvertible
from wittlab.rings import ZZ, FiniteField, IntegersLocalized, IntegersMod, Polynomial, PrimeField
from wittlab.truncation import TruncationSet, p_typical
from wittlab.witt import (
    GhostVector,
    WittVector,
    artin_hasse_idempotent,
    cartier_dieudonne,
    delta_p,
    delta_p_ghost_lift,
    dwork_membership,
    frobenius,
    ghost_of,
    phi_decompose,
    phi_S,
    phi_S_ghost,
    teichmuller,
    verschiebung,
    witt_from_ghost,
)

ZX = Polynomial(ZZ, ["x"])
RINGS = [ZZ, IntegersMod(2**16), FiniteField(3, 2), ZX]
SETS = [TruncationSet.upto(6), TruncationSet([1, 2, 4, 8]), TruncationSet([1, 2, 3, 6, 9]), TruncationSet([1, 5])]

rings = st.sampled_from(RINGS)
sets = st.sampled_from(SETS)
seeds = st.randoms(use_true_random=False)


def rand(R, S, rnd, bound=30):
    return WittVector.random(R, S, rnd, bound)


# worked examples -------------------------------------------------------------


def test_ghost_components_of_a_small_vector():
    S = TruncationSet([1, 2, 4])
    a = WittVector(ZZ, S, [3, 1, 2])
    assert list(ghost_of(a).coords) == [3, 11, 91]
    assert witt_from_ghost(GhostVector(ZZ, S, [3, 11, 91])) == a


def test_one_plus_one():
    S = TruncationSet([1, 2])
    two = WittVector.one(ZZ, S) + WittVector.one(ZZ, S)
    assert list(two.coords) == [2, -1]
    F2 = PrimeField(2)
    assert list((WittVector.one(F2, S) + WittVector.one(F2, S)).coords) == [0, 1]
    assert WittVector.from_int(4, F2, S).is_zero()


def test_not_in_ghost_image():
    with pytest.raises(NotInGhostImage):
        witt_from_ghost(GhostVector(ZZ, TruncationSet([1, 2]), [1, 0]))
    assert not dwork_membership(GhostVector(ZZ, TruncationSet([1, 2]), [1, 0]))
    assert dwork_membership(GhostVector(ZZ, TruncationSet([1, 2]), [1, 3]))


def test_shape_mismatch():
    a = WittVector.one(ZZ, TruncationSet([1, 2]))
    with pytest.raises(MismatchedShape):
        a + WittVector.one(ZZ, TruncationSet([1, 3]))
    with pytest.raises(MismatchedShape):
        a + WittVector.one(PrimeField(2), TruncationSet([1, 2]))


def test_delta_on_a_verschiebung():
    S = TruncationSet([1, 2])
    assert delta_p(2, WittVector(ZZ, S, [0, 1])) == WittVector(ZZ, TruncationSet([1]), [1])
    assert delta_p(2, teichmuller(5, ZZ, S)).is_zero()


def test_artin_hasse_example_and_errors():
    R = IntegersLocalized([2])
    e = artin_hasse_idempotent(TruncationSet([1, 2]), TruncationSet([1]), R)
    assert list(e.coords) == [1, Fraction(-1, 2)]
    with pytest.raises(PrimeNotInvertible):
        artin_hasse_idempotent(TruncationSet([1, 2]), TruncationSet([1]), ZZ)
    with pytest.raises(BadTruncationPair):
        artin_hasse_idempotent(TruncationSet([1, 2, 3, 6]), TruncationSet([1, 2, 3]), IntegersLocalized([2, 3]))


def test_cartier_dieudonne_of_a_variable_is_teichmuller():
    S = TruncationSet.upto(6)
    x = ZX.var(0)
    assert cartier_dieudonne(x, ZX, S) == teichmuller(x, ZX, S)


# properties --------------------------------------------------------------------


@given(rings, sets, seeds)
def test_ring_laws(R, S, rnd):
    a, b, c = rand(R, S, rnd), rand(R, S, rnd), rand(R, S, rnd)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a - a).is_zero()
    assert a * WittVector.one(R, S) == a


@given(rings, sets, seeds)
def test_ghost_map_is_a_homomorphism(R, S, rnd):
    a, b = rand(R, S, rnd), rand(R, S, rnd)
    assert ghost_of(a + b) == ghost_of(a) + ghost_of(b)
    assert ghost_of(a * b) == ghost_of(a) * ghost_of(b)
    assert ghost_of(-a) == -ghost_of(a)


@given(st.sampled_from([ZZ, ZX]), sets, seeds)
def test_ghost_round_trip(R, S, rnd):
    a = rand(R, S, rnd)
    assert witt_from_ghost(ghost_of(a)) == a


@given(rings, sets, seeds)
def test_frobenius_and_verschiebung_relations(R, S, rnd):
    for n in S:
        Sn = S.quotient(n)
        a, b = rand(R, S, rnd), rand(R, Sn, rnd)
        assert frobenius(n, verschiebung(n, b, S)) == b.scale(n)
        assert verschiebung(n, frobenius(n, a) * b, S) == a * verschiebung(n, b, S)
        assert frobenius(n, a * a) == frobenius(n, a) * frobenius(n, a)
        for m in S:
            g = math.gcd(n, m)
            lhs = frobenius(m, verschiebung(n, b, S))
            if n * m // g in S:
                rhs = verschiebung(n // g, frobenius(m // g, b), S.quotient(m)).scale(g)
            else:
                rhs = WittVector.zero(R, S.quotient(m))
            assert lhs == rhs


@given(rings, sets, seeds)
def test_teichmuller_is_multiplicative(R, S, rnd):
    r, s = R.random(rnd, 9), R.random(rnd, 9)
    assert teichmuller(R.mul(r, s), R, S) == teichmuller(r, R, S) * teichmuller(s, R, S)
    for n in S:
        assert frobenius(n, teichmuller(r, R, S)) == teichmuller(R.pow(r, n), R, S.quotient(n))


@given(st.sampled_from([2, 3]), seeds)
def test_delta_matches_ghost_lift(p, rnd):
    for S in (p_typical(p, 3), TruncationSet.upto(6)):
        c = rand(ZZ, S, rnd)
        d = delta_p(p, c)
        assert d == delta_p_ghost_lift(p, c)
        assert frobenius(p, c) == c.restrict(S.quotient(p)) ** p + d.scale(p)


@given(st.sampled_from([PrimeField(2), FiniteField(2, 2), FiniteField(3, 2)]), seeds)
def test_delta_identity_in_characteristic_p(R, rnd):
    p = R.char
    S = p_typical(p, 3)
    c = rand(R, S, rnd)
    assert frobenius(p, c) == c.restrict(S.quotient(p)) ** p + delta_p(p, c).scale(p)


@given(st.sampled_from([FiniteField(2, 2), FiniteField(3, 2), PrimeField(5)]), seeds)
def test_characteristic_p_frobenius(R, rnd):
    p = R.char
    S = p_typical(p, 4)
    a = rand(R, S, rnd)
    assert verschiebung(p, frobenius(p, a), S) == a.scale(p)
    phi = R.frobenius(p)
    assert frobenius(p, a) == WittVector(R, S.quotient(p), [phi(a[n]) for n in S.quotient(p)])


@given(sets, seeds)
def test_phi_S_round_trip(S, rnd):
    avec = {n: ZX.random(rnd, 5) for n in S}
    g = phi_S_ghost(avec, ZX, S)
    assert phi_decompose(g) == avec
    assert phi_S(avec, ZX, S).ghost() == g
    assert dwork_membership(g)


@given(sets, seeds)
def test_idempotent_is_idempotent(S, rnd):
    T = TruncationSet([1])
    R = IntegersLocalized(S.primes())
    e = artin_hasse_idempotent(S, T, R)
    assert e * e == e
    x = rand(R, S, rnd, 5)
    assert (e * x).restrict(T) == x.restrict(T)
