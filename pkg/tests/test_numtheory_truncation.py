import itertools
import math

import pytest
from hypothesis import given, strategies as st

from wittlab.errors import NotAMember, NotDivisorClosed
from wittlab.numtheory import divisors, egcd, factorize, is_prime, lcm, vp
from wittlab.truncation import TruncationSet, all_truncation_sets, p_typical


def test_factorize_and_divisors():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert vp(48, 2) == 4 and vp(48, 3) == 1 and vp(48, 5) == 0


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_egcd_bezout(a, b):
    g, x, y = egcd(a, b)
    assert g == math.gcd(a, b) and a * x + b * y == g
    assert lcm(a, b) == a * b // g


@given(st.integers(1, 5000))
def test_factorization_multiplies_back(n):
    assert math.prod(p**e for p, e in factorize(n).items()) == n
    assert all(is_prime(p) for p in factorize(n))


def test_truncation_set_operations():
    S = TruncationSet.upto(6)
    assert list(S.quotient(2)) == [1, 2, 3]
    assert list(S.quotient(5)) == [1]
    assert list(p_typical(2, 3)) == [1, 2, 4]
    assert list(TruncationSet.generated_by([4, 6])) == [1, 2, 3, 4, 6]
    assert TruncationSet([1, 2]) <= S
    with pytest.raises(NotAMember):
        S.quotient(7)


@pytest.mark.parametrize("members", [[1, 3, 6], [2], []])
def test_rejects_sets_that_are_not_divisor_closed(members):
    with pytest.raises(NotDivisorClosed):
        TruncationSet(members)


def test_all_truncation_sets_matches_brute_force():
    brute = []
    for mask in range(1, 2**8):
        chosen = {n for n in range(1, 9) if mask >> (n - 1) & 1}
        if all(d in chosen for n in chosen for d in range(1, n + 1) if n % d == 0):
            brute.append(frozenset(chosen))
    found = {frozenset(S) for S in all_truncation_sets(8)}
    assert found == set(brute)
    assert len(found) == 44


@given(st.sets(st.integers(1, 30), min_size=1, max_size=4))
def test_generated_sets_are_divisor_closed(gens):
    S = TruncationSet.generated_by(gens)
    for n, d in itertools.product(S, range(1, 31)):
        if n % d == 0:
            assert d in S
