import random

import pytest
from hypothesis import given, strategies as st
from sympy import Matrix, ZZ as SZ
from sympy.matrices.normalforms import invariant_factors

from wittlab.errors import NotASublattice
from wittlab.lattice import full_lattice, hnf_span, lattice_index, preimage, smith_invariants

small_matrix = st.lists(st.lists(st.integers(-20, 20), min_size=3, max_size=3), min_size=3, max_size=5)


def test_small_example():
    L = hnf_span([(1, 1), (0, 2)], 2)
    assert L.basis == ((1, 1), (0, 2))
    assert lattice_index(L, full_lattice(2)) == 2
    assert smith_invariants(L) == [1, 2]
    assert (1, 1) in L and (1, 0) not in L
    assert len(list(L.coset_representatives())) == 2


def test_smith_invariants_against_sympy_example():
    rows = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    L = hnf_span(rows, 3)
    assert smith_invariants(L) == [int(x) for x in invariant_factors(Matrix(rows), domain=SZ)]
    assert lattice_index(L, full_lattice(3)) == abs(Matrix(rows).det())


@given(small_matrix)
def test_smith_invariants_match_sympy(rows):
    L = hnf_span(rows, 3)
    if not L.is_full_rank():
        return
    expected = [abs(int(x)) for x in invariant_factors(Matrix(rows), domain=SZ) if x != 0]
    assert smith_invariants(L) == expected


@given(small_matrix, st.randoms(use_true_random=False))
def test_hnf_is_a_lattice_invariant(rows, rnd):
    # unimodular row operations do not change the normal form
    moved = [list(r) for r in rows]
    for _ in range(6):
        i, j = rnd.sample(range(len(moved)), 2)
        k = rnd.randint(-3, 3)
        moved[i] = [a + k * b for a, b in zip(moved[i], moved[j])]
    rnd.shuffle(moved)
    assert hnf_span(rows, 3).basis == hnf_span(moved, 3).basis


@given(small_matrix, st.lists(st.integers(-30, 30), min_size=3, max_size=3))
def test_reduce_is_a_coset_representative(rows, v):
    L = hnf_span(rows, 3)
    r = L.reduce(v)
    assert tuple(a - b for a, b in zip(v, r)) in L
    assert L.reduce(r) == r


def test_index_of_non_sublattice_is_rejected():
    A = hnf_span([(2, 0), (0, 2)], 2)
    B = hnf_span([(1, 1)], 2)
    with pytest.raises(NotASublattice):
        lattice_index(A, B)


def test_preimage_under_linear_map():
    # x -> 2x on Z^2, preimage of 4Z x Z is 2Z x Z
    M = [[2, 0], [0, 2]]
    target = hnf_span([(4, 0), (0, 1)], 2)
    assert preimage(M, target).basis == hnf_span([(2, 0), (0, 1)], 2).basis


def test_random_coset_enumeration_counts_index():
    rng = random.Random(5)
    for _ in range(10):
        rows = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
        L = hnf_span(rows, 3)
        if L.is_full_rank() and lattice_index(L, full_lattice(3)) < 200:
            reps = list(L.coset_representatives())
            assert len(reps) == len(set(reps)) == lattice_index(L, full_lattice(3))
