"""Integer lattices in Hermite normal form, Smith invariants and preimages.

Lattices are row spans inside ``Z^n``.  The HNF used here is row echelon with
positive pivots and entries above each pivot reduced into ``[0, pivot)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotASublattice

INFINITE = math.inf


def hnf_rows(rows: Iterable[Sequence[int]], ncols: int) -> list:
    """Row-style Hermite normal form; zero rows dropped."""
    A = [list(r) for r in rows if any(r)]
    for r in A:
        if len(r) != ncols:
            raise ValueError("row length differs from ambient rank")
    out = []
    r = 0
    for col in range(ncols):
        while True:
            live = [i for i in range(r, len(A)) if A[i][col]]
            if not live:
                break
            piv = min(live, key=lambda i: abs(A[i][col]))
            A[r], A[piv] = A[piv], A[r]
            done = True
            pr = A[r]
            for i in range(r + 1, len(A)):
                if A[i][col]:
                    q = A[i][col] // pr[col]
                    row = A[i]
                    for j in range(col, ncols):
                        row[j] -= q * pr[j]
                    if row[col]:
                        done = False
            if done:
                break
        if r < len(A) and A[r][col]:
            if A[r][col] < 0:
                A[r] = [-x for x in A[r]]
            pr = A[r]
            for i in range(r):
                q = A[i][col] // pr[col]
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], pr)]
            r += 1
            # Drop rows that became zero to keep the working set small.
            A = A[:r] + [row for row in A[r:] if any(row)]
    out = [tuple(row) for row in A[:r]]
    return out


@dataclass(frozen=True)
class IntegerLattice:
    """A sublattice of ``Z^ambient_rank`` given by its HNF basis."""

    ambient_rank: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list:
        return [next(j for j, x in enumerate(row) if x) for row in self.basis]

    def is_full_rank(self) -> bool:
        return self.dim == self.ambient_rank

    def coordinates(self, v: Sequence[int]) -> list | None:
        """Integer coefficients expressing ``v`` in the basis, or None."""
        v = list(v)
        coeffs = []
        for row, c in zip(self.basis, self.pivots):
            if any(v[:c]):
                return None
            q, rem = divmod(v[c], row[c])
            if rem:
                return None
            coeffs.append(q)
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return coeffs if not any(v) else None

    def __contains__(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None

    def reduce(self, v: Sequence[int]) -> tuple:
        """Canonical coset representative of ``v`` modulo the lattice."""
        v = list(v)
        for row, c in zip(self.basis, self.pivots):
            q = v[c] // row[c]
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return tuple(v)

    def coset_representatives(self):
        """All canonical representatives of ``Z^n / L`` (full rank only)."""
        if not self.is_full_rank():
            raise ValueError("quotient is infinite")
        import itertools

        ranges = [range(row[c]) for row, c in zip(self.basis, self.pivots)]
        for t in itertools.product(*ranges):
            yield tuple(t)

    def determinant(self) -> int:
        if not self.is_full_rank():
            raise ValueError("determinant of a lattice that is not full rank")
        return math.prod(row[c] for row, c in zip(self.basis, self.pivots))

    def __le__(self, other: "IntegerLattice") -> bool:
        return all(v in other for v in self.basis)

    def __add__(self, other: "IntegerLattice") -> "IntegerLattice":
        return hnf_span(self.basis + other.basis, self.ambient_rank)


def hnf_span(vectors: Iterable[Sequence[int]], ambient_rank: int) -> IntegerLattice:
    """The lattice spanned by ``vectors``, in HNF."""
    return IntegerLattice(ambient_rank, tuple(hnf_rows(vectors, ambient_rank)))


def full_lattice(n: int) -> IntegerLattice:
    return hnf_span([[int(i == j) for j in range(n)] for i in range(n)], n)


def _det(M: list) -> int:
    """Bareiss fraction-free determinant."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def lattice_index(sub: IntegerLattice, ambient: IntegerLattice):
    """``|ambient / sub|`` or :data:`INFINITE` when the ranks differ."""
    coords = []
    for v in sub.basis:
        c = ambient.coordinates(v)
        if c is None:
            raise NotASublattice(f"{list(v)} is not in the ambient lattice")
        coords.append(c)
    if sub.dim != ambient.dim:
        return INFINITE
    return abs(_det(coords))


def preimage(matrix: Sequence[Sequence[int]], target: IntegerLattice) -> IntegerLattice:
    """``{v in Z^q : v @ matrix in target}`` for a ``q x r`` integer matrix."""
    q = len(matrix)
    r = target.ambient_rank
    rows = [list(matrix[i]) + [int(i == j) for j in range(q)] for i in range(q)]
    rows += [list(b) + [0] * q for b in target.basis]
    H = hnf_rows(rows, r + q)
    kernel = [row[r:] for row in H if not any(row[:r])]
    return hnf_span(kernel, q)


def smith_invariants(lattice: IntegerLattice) -> list:
    """Invariant factors ``d_1 | d_2 | ...`` of ``Z^n / L`` (0 marks a free summand)."""
    A = [list(r) for r in lattice.basis]
    n = lattice.ambient_rank
    m = len(A)
    diag = []
    t = 0
    while t < min(m, n):
        # Choose the smallest nonzero entry as pivot.
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            changed = False
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                if A[i][t]:
                    changed = True
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    changed = True
            if not changed:
                # Enforce divisibility of the remaining block.
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
                continue
            entries = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            entries += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, i, j = min(entries)
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    diag += [0] * (n - len(diag))
    return diag
