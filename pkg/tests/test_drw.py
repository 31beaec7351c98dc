import random
from fractions import Fraction

import pytest

from wittlab.drw import (
    FormTuple,
    GeneratorWord,
    Presentation,
    V_teich,
    bezout,
    check_ghost_differential,
    d_frak,
    dV_teich,
    degree_zero_ghost,
    form_frobenius,
    form_verschiebung,
    ghost_form_map,
    polynomial_ring,
    random_word,
    realize_word,
    vanishing_above_dimension,
    verify_operator_identities,
)
from wittlab.errors import NotAMember
from wittlab.truncation import TruncationSet

A = polynomial_ring(2)
x, y = A.var(0), A.var(1)
DX = (((0,), A.one()),)


def test_differential_of_a_teichmuller_tuple():
    # dd<x> has components x^(v-1) dx
    S = TruncationSet.upto(3)
    expected = [(((0,), A.pow(x, v - 1)),) for v in S]
    assert d_frak(FormTuple.teich(A, S, x)) == FormTuple(A, S, expected)


def test_differential_of_a_verschiebung():
    S = TruncationSet([1, 2])
    assert dV_teich(A, S, 2, x) == FormTuple(A, S, [(), DX])
    assert d_frak(V_teich(A, S, 2, x)) == dV_teich(A, S, 2, x)


def test_frobenius_needs_member_index():
    with pytest.raises(NotAMember):
        form_frobenius(5, FormTuple.teich(A, TruncationSet.upto(3), x))


def test_basic_operator_identities():
    rng = random.Random(0)
    S = TruncationSet.upto(6)
    for n in (2, 3):
        w = FormTuple.random(A, S.quotient(n), rng)
        assert form_frobenius(n, form_verschiebung(n, w, S)) == w.scale(n)
        assert form_frobenius(n, d_frak(form_verschiebung(n, w, S))) == d_frak(w)
        assert d_frak(d_frak(w)).is_zero()


@pytest.mark.parametrize("members", [[1, 2, 3, 4, 6, 12], [1, 2, 4, 8], [1, 3, 9], list(range(1, 13))])
def test_operator_suite(members):
    report = verify_operator_identities(TruncationSet(members), samples=2, seed=1, word_samples=30)
    failed = [r["identity"] for r in report["identities"] if not r["pass"]]
    assert report["pass"], failed
    assert all(r["samples"] > 0 for r in report["identities"])


def test_words_have_integral_components():
    rng = random.Random(4)
    S = TruncationSet.upto(8)
    for _ in range(30):
        w = realize_word(A, S, random_word(A, S, rng, rng.randint(0, 3)))
        assert w.is_integral()
        for n in S:
            assert form_frobenius(n, w).is_integral()


def test_words_vanish_above_the_number_of_variables():
    assert vanishing_above_dimension(A, TruncationSet.upto(4), random.Random(2), count=20)


def test_degree_zero_ghost_components():
    S = TruncationSet.upto(6)
    for n in S:
        assert degree_zero_ghost(A, S, n, A.mul(x, y)) == V_teich(A, S, n, A.mul(x, y))


def test_relation_kills_words_in_the_ideal():
    g = A.sub(A.pow(x, 2), y)
    P = Presentation(A, [g])
    S = TruncationSet.upto(4)
    word = GeneratorWord((1, A.one()), ((2, g),))
    assert ghost_form_map([(1, word)], P, S).is_zero()
    assert not ghost_form_map([(1, GeneratorWord((1, x), ()))], P, S).is_zero()


def test_ghost_map_commutes_with_differentials():
    P = Presentation(A, [A.sub(A.pow(x, 2), y)])
    rng = random.Random(9)
    S = TruncationSet.upto(4)
    for _ in range(8):
        w = realize_word(A, S, random_word(A, S, rng, rng.randint(0, 2)))
        assert check_ghost_differential(w, P)


def test_bezout_coefficients():
    for m1, n1 in ((3, 2), (5, 3), (1, 4), (4, 9)):
        i, j = bezout(m1, n1)
        assert i * m1 + j * n1 == 1


def test_scaling_uses_exact_rationals():
    S = TruncationSet([1, 2])
    half = FormTuple.teich(A, S, x).scale(Fraction(1, 2))
    assert not half.is_integral()
    assert half.scale(2) == FormTuple.teich(A, S, x)
