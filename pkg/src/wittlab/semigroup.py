"""The semigroup algebra ``ZR`` of a finite ring and the maps ``ZR -> W(R)``.

For a finite ring ``R`` of size ``q`` the algebra ``ZR`` is ``Z^q`` with the
multiplication ``[r][s] = [rs]``.  The augmentation ideal ``I`` (kernel of
``[r] -> r``), its powers and the ideals ``I_n = {a : phi^(n-1)(a) in I^n}``
are full-rank sublattices handled by :mod:`wittlab.lattice`.
"""

from __future__ import annotations

import itertools
import random as _random
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .errors import FrobeniusNotInjective, InvalidRing, NotDivisible, NotPerfect, PrecisionExhausted
from .lattice import IntegerLattice, full_lattice, hnf_span, lattice_index, preimage, smith_invariants
from .numtheory import is_prime
from .rings import FiniteField, GaloisRing, IntegersMod, QuotientRing, Ring
from .truncation import TruncationSet, p_typical
from .witt import WittVector, teichmuller, verschiebung


class SemigroupAlgebra:
    """``ZR`` for a finite ring ``R``, with basis ``[r]`` in enumeration order."""

    def __init__(self, R: Ring):
        if not R.is_finite:
            raise InvalidRing(f"{R.name} is not finite")
        self.R = R
        self.elements = list(R.elements())
        self.q = len(self.elements)
        self.pos = {r: i for i, r in enumerate(self.elements)}
        self._mul_table = [
            [self.pos[R.mul(r, s)] for s in self.elements] for r in self.elements
        ]

    def __repr__(self) -> str:
        return f"Z[{self.R.name}]"

    @property
    def p(self) -> int:
        c = self.R.char
        if not is_prime(c):
            raise InvalidRing(f"{self.R.name} is not an F_p-algebra")
        return c

    def element(self, coeffs: Sequence[int] | Mapping) -> "SemigroupAlgebraElement":
        if isinstance(coeffs, Mapping):
            vec = [0] * self.q
            for r, c in coeffs.items():
                vec[self.pos[self.R.coerce(r)]] += c
            coeffs = vec
        return SemigroupAlgebraElement(self, tuple(coeffs))

    def symbol(self, r) -> "SemigroupAlgebraElement":
        """The basis element ``[r]``."""
        vec = [0] * self.q
        vec[self.pos[self.R.coerce(r)]] = 1
        return SemigroupAlgebraElement(self, tuple(vec))

    def zero(self) -> "SemigroupAlgebraElement":
        return SemigroupAlgebraElement(self, (0,) * self.q)

    def one(self) -> "SemigroupAlgebraElement":
        return self.symbol(self.R.one())

    def random(self, rng: _random.Random, bound: int = 5, support: int | None = None):
        vec = [0] * self.q
        idx = range(self.q) if support is None else rng.sample(range(self.q), min(support, self.q))
        for i in idx:
            vec[i] = rng.randint(-bound, bound)
        return SemigroupAlgebraElement(self, tuple(vec))

    # structure maps ------------------------------------------------------------
    def mul_vectors(self, a: Sequence[int], b: Sequence[int]) -> tuple:
        out = [0] * self.q
        for i, x in enumerate(a):
            if x:
                row = self._mul_table[i]
                for j, y in enumerate(b):
                    if y:
                        out[row[j]] += x * y
        return tuple(out)

    def power_map_matrix(self, e: int) -> list:
        """Matrix of ``[r] -> [r^e]`` acting on row vectors."""
        rows = []
        for r in self.elements:
            row = [0] * self.q
            row[self.pos[self.R.pow(r, e)]] = 1
            rows.append(row)
        return rows

    def augmentation(self, a: Sequence[int]):
        R = self.R
        return R.sum(R.mul_int(r, c) for r, c in zip(self.elements, a) if c)

    # ideals ----------------------------------------------------------------------
    @cached_property
    def augmentation_ideal(self) -> IntegerLattice:
        """``I = ker(ZR -> R)`` as a lattice of rank ``q``."""
        R = self.R
        if isinstance(R, QuotientRing):
            k, m = R.k, R.m
            rows = [list(r) for r in self.elements]
        elif isinstance(R, IntegersMod):
            k, m = 1, R.m
            rows = [[r] for r in self.elements]
        else:
            raise InvalidRing(f"no additive presentation for {R.name}")
        target = hnf_span([[m * int(i == j) for j in range(k)] for i in range(k)], k)
        return preimage(rows, target)

    def ideal_product(self, A: IntegerLattice, B: IntegerLattice) -> IntegerLattice:
        gens = [self.mul_vectors(a, b) for a in A.basis for b in B.basis]
        return hnf_span(gens, self.q)

    def ideal_power(self, n: int) -> IntegerLattice:
        """``I^n`` (and ``I^0 = ZR``)."""
        cache = self.__dict__.setdefault("_powers", {0: full_lattice(self.q)})
        if n not in cache:
            cache[n] = self.ideal_product(self.ideal_power(n - 1), self.augmentation_ideal)
        return cache[n]

    def frobenius_injective(self) -> bool:
        p = self.p
        return len({self.R.pow(r, p) for r in self.elements}) == self.q

    def ideal_In(self, n: int, check: bool = True) -> IntegerLattice:
        """``I_n = {a : phi^(n-1)(a) in I^n}`` for injective Frobenius."""
        if check and not self.frobenius_injective():
            raise FrobeniusNotInjective(f"r -> r^{self.p} is not injective on {self.R.name}")
        return preimage(self.power_map_matrix(self.p ** (n - 1)), self.ideal_power(n))


@dataclass(frozen=True)
class SemigroupAlgebraElement:
    """A finitely supported integer combination ``sum n_r [r]``."""

    algebra: SemigroupAlgebra
    coeffs: tuple

    def _wrap(self, v) -> "SemigroupAlgebraElement":
        return SemigroupAlgebraElement(self.algebra, tuple(v))

    def __add__(self, other):
        return self._wrap(x + y for x, y in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return self._wrap(x - y for x, y in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return self._wrap(-x for x in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, int):
            return self._wrap(x * other for x in self.coeffs)
        return self._wrap(self.algebra.mul_vectors(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = self.algebra.one()
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        return isinstance(other, SemigroupAlgebraElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        R = self.algebra.R
        terms = [f"{c}[{R.format(r)}]" for r, c in zip(self.algebra.elements, self.coeffs) if c]
        return " + ".join(terms) or "0"

    def augmentation(self):
        return self.algebra.augmentation(self.coeffs)

    def in_ideal(self, L: IntegerLattice) -> bool:
        return self.coeffs in L

    def frobenius(self, e: int | None = None) -> "SemigroupAlgebraElement":
        """``phi([r]) = [r^p]`` (or ``[r^e]``) extended linearly."""
        alg = self.algebra
        e = alg.p if e is None else e
        out = [0] * alg.q
        for r, c in zip(alg.elements, self.coeffs):
            if c:
                out[alg.pos[alg.R.pow(r, e)]] += c
        return self._wrap(out)

    def to_json(self) -> list:
        R = self.algebra.R
        return [
            {"element": R.encode(r), "coeff": c}
            for r, c in zip(self.algebra.elements, self.coeffs)
            if c
        ]


def arithmetic_derivation(a: SemigroupAlgebraElement, p: int | None = None) -> SemigroupAlgebraElement:
    """``delta(a) = (phi(a) - a^p) / p``; the division is always exact."""
    p = a.algebra.p if p is None else p
    num = a.frobenius(p) - a**p
    if any(c % p for c in num.coeffs):
        raise NotDivisible("phi(a) - a^p is not divisible by p")
    return SemigroupAlgebraElement(a.algebra, tuple(c // p for c in num.coeffs))


# ---------------------------------------------------------------------------
# The maps alpha
# ---------------------------------------------------------------------------


def alpha_S(x: SemigroupAlgebraElement, S: TruncationSet) -> WittVector:
    """The ring map ``ZR -> W_S(R)`` extending the Teichmueller character."""
    R = x.algebra.R
    total = WittVector.zero(R, S)
    for r, c in zip(x.algebra.elements, x.coeffs):
        if c:
            total = total + teichmuller(r, R, S).scale(c)
    return total


def alpha_n(x: SemigroupAlgebraElement, n: int) -> WittVector:
    """``alpha_n : ZR -> W_n(R)`` over ``{1, p, ..., p^(n-1)}``."""
    return alpha_S(x, p_typical(x.algebra.p, n))


def frobenius_inverse_map(R: Ring, p: int) -> dict:
    """Inverse of ``r -> r^p`` on a finite ring; raises NotPerfect."""
    table = {R.pow(r, p): r for r in R.elements()}
    if len(table) != R.size():
        raise NotPerfect(f"Frobenius is not bijective on {R.name}")
    return table


def alpha_n_inverse(w: WittVector, algebra: SemigroupAlgebra) -> SemigroupAlgebraElement:
    """``sum_v p^v [phi^(-v)(r_v)]`` for ``w = (r_0, ..., r_{n-1})``."""
    R, p = algebra.R, algebra.p
    inv = frobenius_inverse_map(R, p)
    out = algebra.zero()
    for v, idx in enumerate(w.S):
        r = w[idx]
        for _ in range(v):
            r = inv[r]
        out = out + algebra.symbol(r) * (p**v)
    return out


def galois_ring_alpha(a, GR: GaloisRing) -> WittVector:
    """``GR(p^n, k) -> W_n(F_{p^k})`` from the ghost vector ``(phi^v(a))_v``.

    Component ``v`` is obtained by exact division by ``p^v`` and is known
    modulo ``p^(n-v)``; only its reduction mod ``p`` is returned.
    """
    p, n = GR.p, GR.N
    S = p_typical(p, n)
    phi = GR.frobenius_map
    ghosts = [GR.coerce(a)]
    for _ in range(n - 1):
        ghosts.append(phi(ghosts[-1]))
    coords = []
    for v in range(n):
        rest = ghosts[v]
        for i, ai in enumerate(coords):
            rest = GR.sub(rest, GR.mul_int(GR.pow(ai, p ** (v - i)), p**i))
        if any(c % p**v for c in rest):
            raise PrecisionExhausted(f"ghost component {v} is not divisible by {p}^{v}")
        coords.append(tuple(c // p**v for c in rest))
    F = GR.residue_field
    return WittVector(F, S, [GR.reduce(c) for c in coords])


# ---------------------------------------------------------------------------
# Models of Z R / I^n
# ---------------------------------------------------------------------------


@dataclass
class IdealPowerModel:
    """A full-rank ideal lattice in ``ZR`` with the additive structure of the quotient."""

    algebra: SemigroupAlgebra
    n: int
    lattice: IntegerLattice

    @property
    def index(self):
        return lattice_index(self.lattice, full_lattice(self.algebra.q))

    @cached_property
    def invariants(self) -> list:
        return [d for d in smith_invariants(self.lattice) if d != 1]

    def representatives(self):
        for v in self.lattice.coset_representatives():
            yield SemigroupAlgebraElement(self.algebra, v)

    def reduce(self, x: SemigroupAlgebraElement) -> SemigroupAlgebraElement:
        return SemigroupAlgebraElement(self.algebra, self.lattice.reduce(x.coeffs))

    def structure_constants(self) -> dict:
        """Products of coset representatives, reduced to representatives."""
        reps = list(self.representatives())
        return {(a.coeffs, b.coeffs): self.reduce(a * b).coeffs for a in reps for b in reps}

    def to_json(self) -> dict:
        idx = self.index
        return {
            "ring": self.algebra.R.to_json(),
            "n": self.n,
            "basis": [list(r) for r in self.lattice.basis],
            "index": idx if idx != float("inf") else "infinite",
            "invariants": self.invariants,
        }


def ideal_power(R: Ring, n: int) -> IdealPowerModel:
    alg = SemigroupAlgebra(R)
    return IdealPowerModel(alg, n, alg.ideal_power(n))


def ideal_In(R: Ring, n: int) -> IdealPowerModel:
    alg = SemigroupAlgebra(R)
    return IdealPowerModel(alg, n, alg.ideal_In(n))


def alpha_kernel(algebra: SemigroupAlgebra, n: int) -> IntegerLattice:
    """``Ker(alpha_n)`` as a lattice, found by enumerating ``ZR / I^n``."""
    In = algebra.ideal_power(n)
    gens = list(In.basis)
    for v in In.coset_representatives():
        if any(v) and alpha_n(SemigroupAlgebraElement(algebra, v), n).is_zero():
            gens.append(v)
    return hnf_span(gens, algebra.q)


def check_perfect_isomorphism(p: int, k: int, n: int) -> dict:
    """Exhaustive check that ``alpha_n : Z F_q / I^n -> W_n(F_q)`` is bijective.

    Also checks the closed-form inverse on every Witt vector.
    """
    F = FiniteField(p, k)
    alg = SemigroupAlgebra(F)
    model = IdealPowerModel(alg, n, alg.ideal_power(n))
    S = p_typical(p, n)
    images = {}
    for rep in model.representatives():
        images[rep.coeffs] = alpha_n(rep, n)
    distinct = len(set(images.values()))
    inverse_ok = True
    for coords in itertools.product(list(F.elements()), repeat=n):
        w = WittVector(F, S, coords)
        pre = alpha_n_inverse(w, alg)
        if alpha_n(pre, n) != w or model.reduce(pre).coeffs not in images:
            inverse_ok = False
    return {
        "p": p, "k": k, "n": n,
        "index": model.index,
        "witt_size": F.size() ** n,
        "distinct_images": distinct,
        "bijective": distinct == len(images) == F.size() ** n,
        "inverse_ok": inverse_ok,
    }


def check_galois_isomorphism(p: int, k: int, n: int) -> dict:
    """Exhaustive check that ``GR(p^n, k) -> W_n(F_{p^k})`` is a ring isomorphism."""
    GR = GaloisRing(p, n, k)
    F = GR.residue_field
    table = {a: galois_ring_alpha(a, GR) for a in GR.elements()}
    elems = list(table)
    bij = len(set(table.values())) == len(elems) == F.size() ** n
    mult = all(table[GR.mul(a, b)] == table[a] * table[b] for a in elems for b in elems)
    add = all(table[GR.add(a, b)] == table[a] + table[b] for a in elems for b in elems)
    frob = F.frobenius(p)
    intertwines = all(
        table[GR.frobenius_map(a)] == WittVector(F, w.S, [frob(c) for c in w.coords])
        for a, w in table.items()
    )
    return {
        "p": p, "k": k, "n": n,
        "bijective": bij,
        "multiplicative": mult,
        "additive": add,
        "frobenius_intertwined": intertwines,
        "table": {GR.format(a): [F.encode(c) for c in w.coords] for a, w in table.items()},
    }


def kernel_phi_S_condition(a1, a2, a4) -> bool:
    """Membership test for the kernel of ``phi_S`` over an F_2-algebra, S = {1,2,4}."""
    alg = a1.algebra
    I = alg.augmentation_ideal
    d = arithmetic_derivation
    b = d(a1) + a2
    return a1.in_ideal(I) and b.in_ideal(I) and (d(b) + a4 + a2 * a2).in_ideal(I)


def phi_S_ZR(avec: Mapping, S: TruncationSet) -> WittVector:
    """``sum_n V_n(alpha_{S/n}(a_n))`` in ``W_S(R)``."""
    first = next(iter(avec.values()))
    R = first.algebra.R
    total = WittVector.zero(R, S)
    for n in S:
        total = total + verschiebung(n, alpha_S(avec[n], S.quotient(n)), S)
    return total
