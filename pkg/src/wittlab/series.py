"""Truncated power series ``1 + tR[t] mod t^(m+1)`` as a model of ``W_{1..m}(R)``.

Witt addition corresponds to multiplication of series, and a Witt vector
``a`` corresponds to the product ``prod_n (1 - a_n t^n)``.  Truncation sets
other than initial segments are handled by lifting to ``{1..max S}`` with
zero coordinates and projecting back.
"""

from __future__ import annotations

import math
import random as _random
from typing import Sequence

from .errors import MismatchedShape, NotInitialSegment, PrimeNotInvertible
from .rings import Ring, ring_from_json
from .truncation import TruncationSet
from .witt import GhostVector, WittVector


class TruncatedSeries:
    """``1 + c_1 t + ... + c_m t^m`` modulo ``t^(m+1)``."""

    __slots__ = ("ring", "m", "coeffs")

    def __init__(self, ring: Ring, m: int, coeffs: Sequence = ()):
        coeffs = list(coeffs)[:m]
        coeffs += [ring.zero()] * (m - len(coeffs))
        self.ring = ring
        self.m = m
        self.coeffs = tuple(coeffs)

    @classmethod
    def one(cls, ring: Ring, m: int) -> "TruncatedSeries":
        return cls(ring, m)

    @classmethod
    def binomial(cls, ring: Ring, m: int, r, n: int = 1) -> "TruncatedSeries":
        """``1 - r t^n``."""
        c = [ring.zero()] * m
        if 1 <= n <= m:
            c[n - 1] = ring.neg(ring.coerce(r))
        return cls(ring, m, c)

    @classmethod
    def random(cls, ring: Ring, m: int, rng: _random.Random) -> "TruncatedSeries":
        return cls(ring, m, [ring.random(rng) for _ in range(m)])

    def full(self) -> list:
        return [self.ring.one(), *self.coeffs]

    def __getitem__(self, k: int):
        return self.ring.one() if k == 0 else self.coeffs[k - 1]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.ring == other.ring
            and self.m == other.m
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.m, self.coeffs))

    def __repr__(self) -> str:
        fmt = self.ring.format
        terms = ["1"] + [f"{fmt(c)}*t^{k}" for k, c in enumerate(self.coeffs, 1) if c != self.ring.zero()]
        return f"TruncatedSeries({self.ring.name}, mod t^{self.m + 1}: {' + '.join(terms)})"

    def _check(self, other: "TruncatedSeries") -> None:
        if self.ring != other.ring or self.m != other.m:
            raise MismatchedShape("series over different rings or bounds")

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        R, m = self.ring, self.m
        a, b = self.full(), other.full()
        out = []
        for k in range(1, m + 1):
            acc = R.zero()
            for i in range(k + 1):
                if a[i] != R.zero() and b[k - i] != R.zero():
                    acc = R.add(acc, R.mul(a[i], b[k - i]))
            out.append(acc)
        return TruncatedSeries(R, m, out)

    def inverse(self) -> "TruncatedSeries":
        R, m = self.ring, self.m
        a = self.full()
        b = [R.one()]
        for k in range(1, m + 1):
            acc = R.zero()
            for i in range(1, k + 1):
                acc = R.add(acc, R.mul(a[i], b[k - i]))
            b.append(R.neg(acc))
        return TruncatedSeries(R, m, b[1:])

    def __pow__(self, e: int) -> "TruncatedSeries":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = TruncatedSeries.one(self.ring, self.m)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def truncate(self, m: int) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, m, self.coeffs[:m])

    def substitute_power(self, k: int, m: int) -> "TruncatedSeries":
        """``P(t^k)`` modulo ``t^(m+1)``."""
        R = self.ring
        out = [R.zero()] * m
        for i, c in enumerate(self.coeffs, 1):
            if i * k <= m:
                out[i * k - 1] = c
        return TruncatedSeries(R, m, out)

    def to_json(self) -> dict:
        return {
            "ring": self.ring.to_json(),
            "m": self.m,
            "coefficients": [self.ring.encode(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TruncatedSeries":
        ring = ring_from_json(data["ring"])
        coeffs = [ring.decode(c) for c in data["coefficients"]]
        return cls(ring, int(data.get("m", len(coeffs))), coeffs)


# ---------------------------------------------------------------------------
# Maps between the models
# ---------------------------------------------------------------------------


def _require_segment(S: TruncationSet) -> int:
    if not S.is_initial_segment():
        raise NotInitialSegment(f"{list(S)} is not of the form {{1..m}}")
    return S.max


def lambda_map(a: WittVector) -> TruncatedSeries:
    """``prod_{n <= m} (1 - a_n t^n)`` modulo ``t^(m+1)``."""
    m = _require_segment(a.S)
    P = TruncatedSeries.one(a.ring, m)
    for n in a.S:
        if a[n] != a.ring.zero():
            P = P * TruncatedSeries.binomial(a.ring, m, a[n], n)
    return P


def lambda_inverse(P: TruncatedSeries) -> WittVector:
    """Recover the unique ``a`` with ``lambda_map(a) == P``."""
    R, m = P.ring, P.m
    a = []
    Q = P
    for n in range(1, m + 1):
        an = R.neg(Q[n])
        a.append(an)
        if an != R.zero():
            Q = Q * TruncatedSeries.binomial(R, m, an, n).inverse()
    return WittVector(R, TruncationSet.upto(m), a)


def witt_to_series(a: WittVector) -> TruncatedSeries:
    """Series of the lift of ``a`` to ``{1..max S}`` with zero extra coordinates."""
    M = a.S.max
    full = TruncationSet.upto(M)
    return lambda_map(WittVector(a.ring, full, {n: a[n] for n in a.S}))


def series_to_witt(P: TruncatedSeries, S: TruncationSet) -> WittVector:
    """Class of ``P`` in ``W_S`` (projection from ``{1..m}``)."""
    if S.max > P.m:
        raise MismatchedShape("series bound is smaller than max S")
    return lambda_inverse(P).restrict(S)


def mu_map(P: TruncatedSeries) -> GhostVector:
    """Coefficients of ``-t P'/P`` (rings without torsion)."""
    R, m = P.ring, P.m
    inv = P.inverse().full()
    d = [R.mul_int(P[k + 1], k + 1) for k in range(m)]
    out = []
    for k in range(1, m + 1):
        acc = R.zero()
        for i in range(k):
            acc = R.add(acc, R.mul(d[i], inv[k - 1 - i]))
        out.append(R.neg(acc))
    return GhostVector(R, TruncationSet.upto(m), out)


def series_add_as_witt(P: TruncatedSeries, Q: TruncatedSeries) -> TruncatedSeries:
    """Witt addition in the series model is multiplication of series."""
    return P * Q


def _generators(P: TruncatedSeries) -> list:
    a = lambda_inverse(P)
    return [(n, a[n]) for n in a.S if a[n] != P.ring.zero()]


def series_frobenius(k: int, P: TruncatedSeries) -> TruncatedSeries:
    """``F_k`` on generators: ``1 - r t^n -> (1 - r^(k') t^(n'))^((n,k))``."""
    R = P.ring
    target = P.m // k
    out = TruncatedSeries.one(R, target)
    for n, r in _generators(P):
        g = math.gcd(n, k)
        n1, k1 = n // g, k // g
        out = out * TruncatedSeries.binomial(R, target, R.pow(r, k1), n1) ** g
    return out


def series_verschiebung(k: int, P: TruncatedSeries, m: int) -> TruncatedSeries:
    """``V_k`` on generators: ``1 - r t^n -> 1 - r t^(nk)``, modulo ``t^(m+1)``."""
    if m // k != P.m:
        raise MismatchedShape(f"bound {P.m} is not floor({m}/{k})")
    R = P.ring
    out = TruncatedSeries.one(R, m)
    for n, r in _generators(P):
        out = out * TruncatedSeries.binomial(R, m, r, n * k)
    return out


def series_lth_root(P: TruncatedSeries, l: int) -> TruncatedSeries:
    """The unique ``h`` with ``h^l == P``, by coefficient induction."""
    R = P.ring
    if not R.int_is_unit(l):
        raise PrimeNotInvertible(f"{l} is not invertible in {R.name}")
    h = [R.zero()] * P.m
    for k in range(1, P.m + 1):
        partial = TruncatedSeries(R, P.m, h) ** l
        # coefficient k of h^l is l*h_k plus terms in h_1..h_{k-1}
        h[k - 1] = R.div_exact(R.sub(P[k], partial[k]), l)
    return TruncatedSeries(R, P.m, h)
