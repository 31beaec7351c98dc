import pytest
from hypothesis import given, strategies as st

from wittlab.errors import NotInitialSegment, PrimeNotInvertible
from wittlab.rings import ZZ, IntegersMod, PrimeField
from wittlab.series import (
    TruncatedSeries,
    lambda_inverse,
    lambda_map,
    mu_map,
    series_frobenius,
    series_lth_root,
    series_to_witt,
    series_verschiebung,
    witt_to_series,
)
from wittlab.truncation import TruncationSet
from wittlab.witt import WittVector, frobenius, ghost_of, verschiebung

seeds = st.randoms(use_true_random=False)
rings = st.sampled_from([PrimeField(7), IntegersMod(100), ZZ])
bounds = st.integers(1, 5)


def test_lambda_of_a_small_vector():
    F7 = PrimeField(7)
    # (1 - t)(1 - 2t^2)(1 - 3t^3) = 1 - t - 2t^2 - t^3 mod t^4
    P = lambda_map(WittVector(F7, TruncationSet.upto(3), [1, 2, 3]))
    assert P.coeffs == (6, 5, 6)


def test_initial_segment_required():
    with pytest.raises(NotInitialSegment):
        lambda_map(WittVector.one(ZZ, TruncationSet([1, 2, 4])))


def test_non_segment_sets_go_through_the_lift():
    S = TruncationSet([1, 2, 4])
    a = WittVector(ZZ, S, [3, 1, 2])
    assert series_to_witt(witt_to_series(a), S) == a


@given(rings, bounds, seeds)
def test_lambda_is_additive(R, m, rnd):
    S = TruncationSet.upto(m)
    a, b = WittVector.random(R, S, rnd, 50), WittVector.random(R, S, rnd, 50)
    assert lambda_map(a + b) == lambda_map(a) * lambda_map(b)
    assert lambda_inverse(lambda_map(a)) == a


@given(rings, bounds, seeds)
def test_generator_formulas_for_frobenius_and_verschiebung(R, m, rnd):
    S = TruncationSet.upto(m)
    a = WittVector.random(R, S, rnd, 50)
    for k in range(1, m + 1):
        assert series_frobenius(k, lambda_map(a)) == lambda_map(frobenius(k, a))
        small = a.restrict(S.quotient(k))
        assert series_verschiebung(k, lambda_map(small), m) == lambda_map(verschiebung(k, small, S))


@given(bounds, seeds)
def test_logarithmic_derivative_gives_ghost_components(m, rnd):
    a = WittVector.random(ZZ, TruncationSet.upto(m), rnd, 20)
    assert mu_map(lambda_map(a)) == ghost_of(a)


@given(st.sampled_from([2, 3, 5]), bounds, seeds)
def test_roots(l, m, rnd):
    R = PrimeField(7)
    P = TruncatedSeries.random(R, m, rnd)
    h = series_lth_root(P, l)
    assert h**l == P
    with pytest.raises(PrimeNotInvertible):
        series_lth_root(P, 7)


def test_inverse_and_powers():
    R = IntegersMod(100)
    P = TruncatedSeries(R, 4, [3, 1, 4, 1])
    assert P * P.inverse() == TruncatedSeries.one(R, 4)
    assert P**3 == P * P * P
    assert P**-2 == (P * P).inverse()
