import random

import pytest

from wittlab.errors import FrobeniusNotInjective, NotPerfect
from wittlab.lattice import full_lattice, lattice_index
from wittlab.rings import FiniteField, GaloisRing, PrimeField, QuotientRing
from wittlab.semigroup import (
    SemigroupAlgebra,
    alpha_kernel,
    alpha_n,
    alpha_n_inverse,
    arithmetic_derivation,
    check_galois_isomorphism,
    check_perfect_isomorphism,
    galois_ring_alpha,
    ideal_In,
    ideal_power,
    kernel_phi_S_condition,
    phi_S_ZR,
)
from wittlab.truncation import TruncationSet
from wittlab.witt import WittVector


def test_quotient_sizes():
    assert ideal_power(PrimeField(2), 2).index == 4
    assert ideal_power(FiniteField(2, 2), 2).index == 16
    assert ideal_power(PrimeField(3), 1).index == 3


def test_integers_mod_four_as_witt_vectors():
    GR = GaloisRing(2, 2, 1)
    w = galois_ring_alpha(GR.from_int(3), GR)
    assert [GR.residue_field.encode(c) for c in w.coords] == [[1], [1]]


@pytest.mark.parametrize("p,k,n", [(2, 1, 2), (2, 1, 3), (2, 2, 2), (3, 1, 2), (3, 1, 3)])
def test_perfect_and_galois_isomorphisms(p, k, n):
    r = check_perfect_isomorphism(p, k, n)
    assert r["bijective"] and r["inverse_ok"] and r["index"] == (p**k) ** n
    g = check_galois_isomorphism(p, k, n)
    assert g["bijective"] and g["multiplicative"] and g["additive"] and g["frobenius_intertwined"]


def test_closed_form_inverse():
    F = FiniteField(2, 2)
    alg = SemigroupAlgebra(F)
    w = WittVector(F, TruncationSet([1, 2]), [F.generator(), F.one()])
    assert alpha_n(alpha_n_inverse(w, alg), 2) == w
    with pytest.raises(NotPerfect):
        alpha_n_inverse(WittVector.one(QuotientRing(2, [0, 0, 1]), TruncationSet([1, 2])),
                        SemigroupAlgebra(QuotientRing(2, [0, 0, 1])))


def test_derivation_laws():
    alg = SemigroupAlgebra(FiniteField(2, 2))
    rng = random.Random(0)
    d = arithmetic_derivation
    for _ in range(100):
        a, b = alg.random(rng, 4), alg.random(rng, 4)
        assert d(a + b) == d(a) + d(b) - a * b
        assert d(a * b) == d(a) * b.frobenius() + a * a * d(b)


def test_ideal_chain_for_a_perfect_field():
    R = FiniteField(2, 2)
    alg = SemigroupAlgebra(R)
    I = alg.augmentation_ideal
    assert alg.ideal_In(1).basis == I.basis
    I2, I3 = alg.ideal_In(2), alg.ideal_In(3)
    assert I3 <= I2 <= I
    assert alg.ideal_power(2) <= I2
    assert alpha_kernel(alg, 2) == I2


def test_non_reduced_ring_breaks_the_kernel_description():
    R = QuotientRing(2, [0, 1, 0, 1])
    alg = SemigroupAlgebra(R)
    assert not alg.frobenius_injective()
    with pytest.raises(FrobeniusNotInjective):
        ideal_In(R, 2)
    full = full_lattice(alg.q)
    assert lattice_index(alpha_kernel(alg, 2), full) == 64
    assert lattice_index(alg.ideal_In(2, check=False), full) == 16


def test_kernel_of_phi_S_over_F2():
    alg = SemigroupAlgebra(PrimeField(2))
    S = TruncationSet([1, 2, 4])
    zero, one = alg.zero(), alg.one()
    assert phi_S_ZR({1: zero, 2: zero, 4: zero}, S).is_zero()
    assert kernel_phi_S_condition(zero, zero, zero)
    assert not kernel_phi_S_condition(one, zero, zero)
    rng = random.Random(3)
    for _ in range(200):
        a = {n: alg.random(rng, 3) for n in S}
        assert phi_S_ZR(a, S).is_zero() == kernel_phi_S_condition(a[1], a[2], a[4])
