"""Witt vectors over a truncation set.

Arithmetic on :class:`WittVector` evaluates the universal polynomials from
:mod:`wittlab.tables`; this is the single definition used for every
coefficient ring.  :class:`GhostVector` holds elements of ``A^S`` with
componentwise operations and the ghost-side Frobenius and Verschiebung.
"""

from __future__ import annotations

import math
import random as _random
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    BadTruncationPair,
    MismatchedShape,
    NotAMember,
    NotDivisible,
    NotInGhostImage,
    PrimeNotInvertible,
)
from .numtheory import divisors, factorize, is_prime
from .rings import Ring, ring_from_json
from .tables import add_poly, frob_poly, mul_poly, neg_poly
from .truncation import TruncationSet

# ---------------------------------------------------------------------------
# Compiled polynomial evaluation
# ---------------------------------------------------------------------------

_COMPILED: dict = {}


def _compile(poly: dict, slot: Callable[[int, int], int]) -> tuple:
    terms = []
    for mono, coeff in poly.items():
        terms.append((coeff, tuple((slot(t, n), e) for (t, n), e in mono)))
    # Cheap terms first keeps the power cache warm for later ones.
    terms.sort(key=lambda t: len(t[1]))
    return tuple(terms)


def _compiled(kind: str, S: TruncationSet, n: int = 1) -> tuple:
    key = (kind, S, n)
    found = _COMPILED.get(key)
    if found is not None:
        return found
    size = len(S)

    def slot(tag: int, m: int) -> int:
        return S.index(m) + tag * size

    if kind == "add":
        out = tuple(_compile(add_poly(s), slot) for s in S)
    elif kind == "mul":
        out = tuple(_compile(mul_poly(s), slot) for s in S)
    elif kind == "neg":
        out = tuple(_compile(neg_poly(s), slot) for s in S)
    else:
        out = tuple(_compile(frob_poly(n, s), slot) for s in S.quotient(n))
    _COMPILED[key] = out
    return out


def _evaluate(ring: Ring, compiled: tuple, args: Sequence) -> list:
    zero = ring.zero()
    live = [a != zero for a in args]
    powers: dict = {}
    mul, add, mul_int, rpow = ring.mul, ring.add, ring.mul_int, ring.pow
    out = []
    for terms in compiled:
        acc = zero
        for coeff, factors in terms:
            term = None
            for slot, e in factors:
                if not live[slot]:
                    term = zero
                    break
                key = (slot, e)
                v = powers.get(key)
                if v is None:
                    v = args[slot] if e == 1 else rpow(args[slot], e)
                    powers[key] = v
                term = v if term is None else mul(term, v)
            if term is None:
                term = ring.one()
            elif term is zero:
                continue
            acc = add(acc, term if coeff == 1 else mul_int(term, coeff))
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# Vectors
# ---------------------------------------------------------------------------


class _Vector:
    __slots__ = ("ring", "S", "coords")

    def __init__(self, ring: Ring, S: TruncationSet, coords: Sequence | Mapping):
        if isinstance(coords, Mapping):
            coords = [coords.get(n, ring.zero()) for n in S]
        coords = tuple(coords)
        if len(coords) != len(S):
            raise MismatchedShape(f"{len(coords)} components for {len(S)} indices")
        self.ring = ring
        self.S = S
        self.coords = coords

    def __getitem__(self, n: int):
        try:
            return self.coords[self.S.index(n)]
        except KeyError:
            raise NotAMember(f"{n} is not in {list(self.S)}") from None

    def items(self):
        return zip(self.S, self.coords)

    def as_dict(self) -> dict:
        return dict(self.items())

    def _check(self, other: "_Vector") -> None:
        if type(other) is not type(self) or other.ring != self.ring or other.S != self.S:
            raise MismatchedShape(
                f"{type(self).__name__} over {self.ring.name}, {list(self.S)} vs "
                f"{type(other).__name__} over {getattr(other, 'ring', None)}, {list(getattr(other, 'S', []))}"
            )

    def __eq__(self, other: object) -> bool:
        return (
            type(other) is type(self)
            and self.S == other.S
            and self.ring == other.ring
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.S, self.ring, self.coords))

    def __repr__(self) -> str:
        body = ", ".join(self.ring.format(c) for c in self.coords)
        return f"{type(self).__name__}({self.ring.name}, {list(self.S)}: ({body}))"

    def is_zero(self) -> bool:
        z = self.ring.zero()
        return all(c == z for c in self.coords)

    def to_json(self) -> dict:
        return {
            "S": self.S.to_json(),
            "ring": self.ring.to_json(),
            "components": [self.ring.encode(c) for c in self.coords],
        }

    @classmethod
    def from_json(cls, data: dict):
        ring = ring_from_json(data["ring"])
        S = TruncationSet(data["S"])
        return cls(ring, S, [ring.decode(c) for c in data["components"]])

    def restrict(self, T: TruncationSet):
        """Projection onto a smaller truncation set."""
        if not T <= self.S:
            raise MismatchedShape(f"{list(T)} is not contained in {list(self.S)}")
        return type(self)(self.ring, T, [self[n] for n in T])


class GhostVector(_Vector):
    """An element of ``A^S`` with componentwise ring operations."""

    __slots__ = ()

    def __add__(self, other):
        self._check(other)
        return GhostVector(self.ring, self.S, [self.ring.add(a, b) for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return GhostVector(self.ring, self.S, [self.ring.sub(a, b) for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return GhostVector(self.ring, self.S, [self.ring.neg(a) for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, int):
            return GhostVector(self.ring, self.S, [self.ring.mul_int(a, other) for a in self.coords])
        self._check(other)
        return GhostVector(self.ring, self.S, [self.ring.mul(a, b) for a, b in zip(self.coords, other.coords)])

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return GhostVector(self.ring, self.S, [self.ring.pow(a, e) for a in self.coords])

    def frobenius(self, n: int) -> "GhostVector":
        """``F_n(x)_v = x_{vn}`` over ``S/n``."""
        T = self.S.quotient(n)
        return GhostVector(self.ring, T, [self[v * n] for v in T])

    def verschiebung(self, n: int, S: TruncationSet) -> "GhostVector":
        """``V_n(x)_v = n x_{v/n}`` if ``n | v`` else 0, over ``S``."""
        if S.quotient(n) != self.S:
            raise MismatchedShape(f"S/{n} differs from the source index set")
        z = self.ring.zero()
        return GhostVector(
            self.ring, S, [self.ring.mul_int(self[v // n], n) if v % n == 0 else z for v in S]
        )


class WittVector(_Vector):
    """An element of ``W_S(R)`` in Witt coordinates."""

    __slots__ = ()

    # constructors -------------------------------------------------------------
    @classmethod
    def zero(cls, ring: Ring, S: TruncationSet) -> "WittVector":
        return cls(ring, S, [ring.zero()] * len(S))

    @classmethod
    def one(cls, ring: Ring, S: TruncationSet) -> "WittVector":
        return teichmuller(ring.one(), ring, S)

    @classmethod
    def from_int(cls, k: int, ring: Ring, S: TruncationSet) -> "WittVector":
        return cls.one(ring, S).scale(k)

    @classmethod
    def random(cls, ring: Ring, S: TruncationSet, rng: _random.Random, bound: int | None = None):
        return cls(ring, S, [ring.random(rng, bound) for _ in S])

    # ring operations -------------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = WittVector.from_int(other, self.ring, self.S)
        self._check(other)
        return WittVector(self.ring, self.S, _evaluate(self.ring, _compiled("add", self.S), self.coords + other.coords))

    __radd__ = __add__

    def __neg__(self):
        return WittVector(self.ring, self.S, _evaluate(self.ring, _compiled("neg", self.S), self.coords))

    def __sub__(self, other):
        if isinstance(other, int):
            other = WittVector.from_int(other, self.ring, self.S)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        return WittVector(self.ring, self.S, _evaluate(self.ring, _compiled("mul", self.S), self.coords + other.coords))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = WittVector.one(self.ring, self.S)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, k: int) -> "WittVector":
        """The integer multiple ``k * self`` by double-and-add."""
        if k < 0:
            return (-self).scale(-k)
        result = WittVector.zero(self.ring, self.S)
        base = self
        while k:
            if k & 1:
                result = result + base
            k >>= 1
            if k:
                base = base + base
        return result

    # operators -----------------------------------------------------------------
    def ghost(self) -> GhostVector:
        return ghost_of(self)

    def frobenius(self, n: int) -> "WittVector":
        return frobenius(n, self)

    def verschiebung(self, n: int, S: TruncationSet) -> "WittVector":
        return verschiebung(n, self, S)


def _same_shape(vectors: Iterable[_Vector]) -> None:
    vs = list(vectors)
    for v in vs[1:]:
        vs[0]._check(v)


# ---------------------------------------------------------------------------
# Ghost map and its inverse
# ---------------------------------------------------------------------------


def ghost_of(a: WittVector) -> GhostVector:
    """``w_m(a) = sum_{n | m} n a_n^(m/n)``."""
    R = a.ring
    out = []
    for m in a.S:
        acc = R.zero()
        for d in divisors(m):
            acc = R.add(acc, R.mul_int(R.pow(a[d], m // d), d))
        out.append(acc)
    return GhostVector(R, a.S, out)


def witt_from_ghost(x: GhostVector) -> WittVector:
    """Inverse of the ghost map over a ring without S-torsion.

    Raises :class:`NotInGhostImage` when some division is not exact, which
    is exactly the failure of ``x`` to be a ghost vector.
    """
    R, S = x.ring, x.S
    a: dict = {}
    for m in S.divisor_order:
        rest = x[m]
        for d in divisors(m)[:-1]:
            rest = R.sub(rest, R.mul_int(R.pow(a[d], m // d), d))
        try:
            a[m] = R.div_exact(rest, m)
        except NotDivisible as exc:
            raise NotInGhostImage(f"component {m}: {exc.detail}") from None
    return WittVector(R, S, a)


# ---------------------------------------------------------------------------
# Frobenius, Verschiebung, Teichmueller
# ---------------------------------------------------------------------------


def teichmuller(r, ring: Ring, S: TruncationSet) -> WittVector:
    """``<r> = (r, 0, 0, ...)``."""
    z = ring.zero()
    return WittVector(ring, S, [ring.coerce(r)] + [z] * (len(S) - 1))


def frobenius(n: int, a: WittVector) -> WittVector:
    """``F_n : W_S -> W_{S/n}`` via the universal Frobenius polynomials."""
    T = a.S.quotient(n)
    if n == 1:
        return a
    return WittVector(a.ring, T, _evaluate(a.ring, _compiled("frob", a.S, n), a.coords))


def verschiebung(n: int, a: WittVector, S: TruncationSet) -> WittVector:
    """``V_n : W_{S/n} -> W_S``, shifting coordinate ``m`` to ``nm``."""
    if n not in S:
        raise NotAMember(f"{n} is not in {list(S)}")
    if S.quotient(n) != a.S:
        raise MismatchedShape(f"source index set must be S/{n}")
    z = a.ring.zero()
    return WittVector(a.ring, S, [a[m // n] if m % n == 0 else z for m in S])


def witt_div_int(a: WittVector, l: int) -> WittVector:
    """The unique ``y`` with ``l * y == a`` when ``l`` is a unit of the ring.

    Coordinate ``s`` of ``l * y`` is ``l * y_s`` plus a polynomial in the
    earlier coordinates, so ``y`` is solved one coordinate at a time.
    """
    R = a.ring
    if not R.int_is_unit(l):
        raise PrimeNotInvertible(f"{l} is not invertible in {R.name}")
    y = dict.fromkeys(a.S, R.zero())
    for s in a.S.divisor_order:
        partial = WittVector(R, a.S, y).scale(l)
        y[s] = R.div_exact(R.sub(a[s], partial[s]), l)
    return WittVector(R, a.S, y)


# ---------------------------------------------------------------------------
# delta_p
# ---------------------------------------------------------------------------


def _necklace_products(alphas: list, p: int, one: WittVector) -> WittVector:
    """Sum of ``a_{n1} ... a_{np}`` over non-constant tuples modulo rotation."""
    k = len(alphas)
    total = WittVector.zero(one.ring, one.S)
    if k < 2:
        return total

    def is_rep(t: tuple) -> bool:
        if len(set(t)) == 1:
            return False
        return all(t <= t[i:] + t[:i] for i in range(1, p))

    def walk(prefix: tuple, prod: WittVector) -> None:
        nonlocal total
        if len(prefix) == p:
            if is_rep(prefix):
                total = total + prod
            return
        start = prefix[0] if prefix else 0
        for i in range(start, k):
            # A minimal rotation never has an entry smaller than its first.
            walk(prefix + (i,), prod * alphas[i] if prefix else alphas[i])

    walk((), one)
    return total


def delta_p(p: int, c: WittVector) -> WittVector:
    """The operator with ``F_p(c) = c~^p + p * delta_p(c)`` over ``S/p``.

    Computed from the decomposition ``c = sum_n V_n<c_n>``: each summand has
    a closed form, and the cross terms of the p-th power are summed over
    rotation classes of index tuples.
    """
    S, R = c.S, c.ring
    if not is_prime(p):
        raise NotAMember(f"{p} is not prime")
    T = S.quotient(p)
    support = [n for n in S if c[n] != R.zero()]
    total = WittVector.zero(R, T)
    for n in support:
        r = c[n]
        if n % p:
            coef = (1 - n ** (p - 1)) // p
            if coef:
                alpha = verschiebung(n, teichmuller(r, R, S.quotient(n)), S)
                total = total + frobenius(p, alpha).scale(coef)
        else:
            b = verschiebung(n // p, teichmuller(r, R, T.quotient(n // p)), T)
            term = b
            if p in T:
                Tp = T.quotient(p)
                term = term - verschiebung(p, (b**p).restrict(Tp), T).scale(p ** (p - 2))
            total = total + term
    alphas = [
        verschiebung(n, teichmuller(c[n], R, T.quotient(n)), T) for n in support if n in T
    ]
    total = total - _necklace_products(alphas, p, WittVector.one(R, T))
    return total


def delta_p_ghost_lift(p: int, c: WittVector) -> WittVector:
    """``(F_p(c) - c~^p) / p`` computed through ghost components (torsion-free rings)."""
    T = c.S.quotient(p)
    g = frobenius(p, c).ghost() - (c.restrict(T) ** p).ghost()
    R = c.ring
    return witt_from_ghost(GhostVector(R, T, [R.div_exact(x, p) for x in g.coords]))


# ---------------------------------------------------------------------------
# Artin-Hasse idempotents
# ---------------------------------------------------------------------------


def artin_hasse_idempotent(S: TruncationSet, T: TruncationSet, ring: Ring) -> WittVector:
    """``e_T = prod_{l in S \\ T, l prime} (1 - l^-1 V_l(1))``."""
    if not T <= S:
        raise BadTruncationPair(f"{list(T)} is not contained in {list(S)}")
    tprimes = {l for l in T if is_prime(l)}
    for n in S:
        if (n in T) != set(factorize(n)).issubset(tprimes):
            raise BadTruncationPair(f"membership of {n} in T is not decided by its primes")
    e = WittVector.one(ring, S)
    for l in S:
        if l in T or not is_prime(l):
            continue
        if not ring.int_is_unit(l):
            raise PrimeNotInvertible(f"{l} is not invertible in {ring.name}")
        vl = verschiebung(l, WittVector.one(ring, S.quotient(l)), S)
        e = e * (WittVector.one(ring, S) - witt_div_int(vl, l))
    return e


# ---------------------------------------------------------------------------
# Frobenius lifts: Dwork criterion and the Cartier-Dieudonne map
# ---------------------------------------------------------------------------


def phi_n(ring: Ring, n: int) -> Callable:
    """``phi_n = prod_p phi_p^(v_p(n))`` from the registered lifts."""
    maps = [(ring.frobenius(p), e) for p, e in sorted(factorize(n).items())] if n > 1 else []

    def apply(a):
        for f, e in maps:
            for _ in range(e):
                a = f(a)
        return a

    return apply


def dwork_membership(x: GhostVector) -> bool:
    """Whether ``phi_p(x_{n/p}) = x_n mod p^(v_p(n))`` for all ``p | n`` in S."""
    R = x.ring
    for n in x.S:
        for p, e in factorize(n).items() if n > 1 else ():
            diff = R.sub(R.frobenius(p)(x[n // p]), x[n])
            try:
                R.div_exact(diff, p**e)
            except NotDivisible:
                return False
    return True


def cartier_dieudonne(a, ring: Ring, S: TruncationSet) -> WittVector:
    """``f_S(a)``: the Witt vector with ghost components ``(phi_n(a))_n``."""
    a = ring.coerce(a)
    return witt_from_ghost(GhostVector(ring, S, [phi_n(ring, n)(a) for n in S]))


def phi_S_ghost(avec: Mapping, ring: Ring, S: TruncationSet) -> GhostVector:
    """Ghost side of ``Phi_S(a) = sum_n V_n f_{S/n}(a_n)``."""
    out = []
    for m in S:
        acc = ring.zero()
        for n in divisors(m):
            acc = ring.add(acc, ring.mul_int(phi_n(ring, m // n)(avec[n]), n))
        out.append(acc)
    return GhostVector(ring, S, out)


def phi_S(avec: Mapping, ring: Ring, S: TruncationSet) -> WittVector:
    """``Phi_S(a) = sum_{n in S} V_n(f_{S/n}(a_n))`` computed in Witt coordinates."""
    total = WittVector.zero(ring, S)
    for n in S:
        f = cartier_dieudonne(avec[n], ring, S.quotient(n))
        total = total + verschiebung(n, f, S)
    return total


def phi_decompose(x: GhostVector) -> dict:
    """Coefficients ``a`` with ``sum_{n | m} n phi_{m/n}(a_n) = x_m``."""
    R, S = x.ring, x.S
    a: dict = {}
    for m in S.divisor_order:
        rest = x[m]
        for n in divisors(m)[:-1]:
            rest = R.sub(rest, R.mul_int(phi_n(R, m // n)(a[n]), n))
        try:
            a[m] = R.div_exact(rest, m)
        except NotDivisible as exc:
            raise NotInGhostImage(f"component {m}: {exc.detail}") from None
    return a


def gcd_split(n: int, m: int) -> tuple[int, int, int, int]:
    """``(g, l, n', m')`` with ``g = (n, m)``, ``l = [n, m]``, ``n' = n/g``, ``m' = m/g``."""
    g = math.gcd(n, m)
    return g, n * m // g, n // g, m // g
