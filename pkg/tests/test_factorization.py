import itertools
import random

import pytest
from hypothesis import given, strategies as st

from wittlab.errors import MismatchedShape, TooLarge
from wittlab.rings import ZZ, FiniteField, PrimeField
from wittlab.series import TruncatedSeries, lambda_map
from wittlab.truncation import TruncationSet
from wittlab.witt import WittVector, teichmuller
from wittlab.factorization import (
    _unit_construction,
    count_representable,
    discrete_log,
    factor_mod_tm,
    field_embedding,
    field_root,
    power_sum_family,
    linear_factor_data,
)


def _power_sums(data, l):
    """Coefficients of sum_i (a_i + b_i x)^l by repeated polynomial multiplication."""
    GR = data.ring
    total = [GR.zero()] * (l + 1)
    for a, b in data.expanded():
        poly = [GR.one()]
        for _ in range(l):
            nxt = [GR.zero()] * (len(poly) + 1)
            for j, c in enumerate(poly):
                nxt[j] = GR.add(nxt[j], GR.mul(c, a))
                nxt[j + 1] = GR.add(nxt[j + 1], GR.mul(c, b))
            poly = nxt
        total = [GR.add(x, y) for x, y in zip(total, poly)]
    return total


GRID = [(p, m, N) for p in (2, 3) for m in range(2, 7) for N in (1, 2, 3)] + [(5, m, 1) for m in range(2, 6)]


@pytest.mark.parametrize("p,m,N", GRID)
def test_power_sum_congruences(p, m, N):
    data = power_sum_family(p, m, N)
    assert data.verify()
    GR = data.ring
    for l in range(1, m + 1):
        want = [GR.zero()] * (l + 1)
        if l == m:
            want[1] = GR.from_int(m)
        assert _power_sums(data, l) == want


def test_length_two_edge_case_needs_a_fallback():
    # roots of unity of order m - 1 = 1 do not give valid data for m = 2
    for p, N in ((2, 2), (3, 1), (3, 2)):
        candidate = _unit_construction(p, 2, N, 1, random.Random(0))
        assert candidate is None or not candidate.verify()
    data = power_sum_family(2, 2, 2)
    assert data.verify() and data.method == "signed units"


@pytest.mark.parametrize("p,m", [(2, 3), (2, 4), (3, 3), (3, 5)])
def test_linear_factor_product(p, m):
    data = linear_factor_data(p, m, 1)
    assert data.verified and data.check()


@pytest.mark.parametrize("p,k,m", [(2, 1, 3), (2, 2, 4), (3, 1, 4), (3, 2, 3), (2, 3, 2), (5, 1, 2)])
def test_factorization_reproduces_the_series(p, k, m):
    F = FiniteField(p, k)
    rng = random.Random(p * 100 + k * 10 + m)
    for _ in range(5):
        Q = TruncatedSeries.random(F, m, rng)
        fac = factor_mod_tm(Q)
        assert fac.verify() and fac.field.k % k == 0
        G = fac.field
        total = WittVector.zero(G, TruncationSet.upto(m))
        for rho, mult in fac.factors:
            total = total + teichmuller(rho, G, TruncationSet.upto(m)).scale(mult)
        assert lambda_map(total) == fac.target


def test_factorization_needs_a_finite_field():
    with pytest.raises(MismatchedShape):
        factor_mod_tm(TruncatedSeries(ZZ, 2, [1, 1]))


def _brute_count(p, m):
    """Classes of prod_a (1 - a t)^(e_a) mod (p, t^(m+1)) by direct expansion."""
    def mul(P, Q):
        return tuple(sum(P[i] * Q[k - i] for i in range(k + 1)) % p for k in range(m + 1))

    period = p
    while period <= m:
        period *= p
    seen = set()
    for exps in itertools.product(range(period), repeat=p - 1):
        P = (1,) + (0,) * m
        for a, e in zip(range(1, p), exps):
            lin = (1, (-a) % p) + (0,) * (m - 1)
            for _ in range(e):
                P = mul(P, lin)
        seen.add(P)
    return len(seen)


@pytest.mark.parametrize("p,m,expected", [(2, 3, 4), (2, 1, 2), (3, 2, 9), (2, 2, 4), (3, 5, None)])
def test_count_representable(p, m, expected):
    out = count_representable(p, m)
    assert out["total"] == p**m
    assert out["representable"] == _brute_count(p, m)
    if expected is not None:
        assert out["representable"] == expected


def test_count_representable_size_limit():
    with pytest.raises(TooLarge):
        count_representable(2, 40)


@given(st.sampled_from([FiniteField(2, 4), FiniteField(3, 3), FiniteField(7, 1)]), st.integers(1, 6),
       st.randoms(use_true_random=False))
def test_roots_and_logs(F, m, rnd):
    y = F.random(rnd)
    if F.is_zero(y):
        return
    z = field_root(F, y, m)
    if z is not None:
        assert F.pow(z, m) == y
    g_y = discrete_log(F, y)
    assert 0 <= g_y < F.size() - 1


def test_field_embedding_is_a_ring_map():
    small, big = FiniteField(2, 2), FiniteField(2, 6)
    f = field_embedding(small, big)
    for a in small.elements():
        for b in small.elements():
            assert f(small.mul(a, b)) == big.mul(f(a), f(b))
            assert f(small.add(a, b)) == big.add(f(a), f(b))
    prime = field_embedding(FiniteField(3, 1), FiniteField(3, 2))
    assert prime(FiniteField(3, 1).from_int(2)) == FiniteField(3, 2).from_int(2)
