"""Truncation sets: finite divisor-closed sets of positive integers."""

from __future__ import annotations

import json
from functools import cached_property
from typing import Iterable, Iterator

from .errors import NotAMember, NotDivisorClosed
from .numtheory import divisors, is_prime, omega


class TruncationSet:
    """An immutable nonempty divisor-closed set of positive integers.

    >>> S = TruncationSet([1, 2, 3, 4, 6, 12])
    >>> S.quotient(2)
    TruncationSet([1, 2, 3, 6])
    """

    __slots__ = ("members", "_set", "__dict__")

    def __init__(self, members: Iterable[int]):
        ms = sorted(set(int(m) for m in members))
        if not ms:
            raise NotDivisorClosed("a truncation set is nonempty")
        if ms[0] < 1:
            raise NotDivisorClosed("members must be positive integers")
        s = set(ms)
        for n in ms:
            for d in divisors(n):
                if d not in s:
                    raise NotDivisorClosed(f"{d} divides {n} but is missing")
        self.members = tuple(ms)
        self._set = frozenset(ms)

    @classmethod
    def upto(cls, m: int) -> "TruncationSet":
        """The initial segment {1, ..., m}."""
        return cls(range(1, m + 1))

    @classmethod
    def generated_by(cls, gens: Iterable[int]) -> "TruncationSet":
        """Smallest truncation set containing ``gens``."""
        out: set = {1}
        for g in gens:
            out.update(divisors(g))
        return cls(out)

    # container protocol -------------------------------------------------------
    def __contains__(self, n: object) -> bool:
        return n in self._set

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TruncationSet) and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __le__(self, other: "TruncationSet") -> bool:
        return self._set <= other._set

    def __repr__(self) -> str:
        return f"TruncationSet({list(self.members)})"

    @property
    def max(self) -> int:
        return self.members[-1]

    def index(self, n: int) -> int:
        return self._positions[n]

    @cached_property
    def _positions(self) -> dict:
        return {n: i for i, n in enumerate(self.members)}

    @cached_property
    def divisor_order(self) -> tuple:
        """Members sorted by number of prime factors, ties numerically."""
        return tuple(sorted(self.members, key=lambda n: (omega(n), n)))

    def is_initial_segment(self) -> bool:
        return self.members == tuple(range(1, self.max + 1))

    def primes(self) -> list:
        return [n for n in self.members if is_prime(n)]

    def _require(self, n: int) -> None:
        if n not in self._set:
            raise NotAMember(f"{n} is not in {list(self.members)}")

    # operations ---------------------------------------------------------------
    def quotient(self, n: int) -> "TruncationSet":
        """S/n = {v : v*n in S}."""
        self._require(n)
        return TruncationSet(m // n for m in self.members if m % n == 0)

    def complement(self, n: int) -> "TruncationSet":
        """{m in S : n does not divide m}, for n > 1."""
        self._require(n)
        if n == 1:
            raise NotAMember("the complement of 1 is empty")
        return TruncationSet(m for m in self.members if m % n)

    def to_json(self) -> list:
        return list(self.members)

    @classmethod
    def from_json(cls, data) -> "TruncationSet":
        if isinstance(data, str):
            data = json.loads(data) if data.strip().startswith("[") else [
                int(x) for x in data.split(",") if x.strip()]
        return cls(data)


def quotient_set(S: TruncationSet, n: int) -> TruncationSet:
    return S.quotient(n)


def complement_set(S: TruncationSet, n: int) -> TruncationSet:
    return S.complement(n)


def p_typical(p: int, n: int) -> TruncationSet:
    """{1, p, ..., p^(n-1)}."""
    if n < 1:
        raise ValueError("length must be positive")
    return TruncationSet(p**i for i in range(n))


def all_truncation_sets(bound: int) -> list:
    """Every truncation set contained in {1, ..., bound}."""
    found = []
    candidates = list(range(2, bound + 1))

    def extend(chosen: set, start: int) -> None:
        found.append(TruncationSet(chosen))
        for i in range(start, len(candidates)):
            c = candidates[i]
            if all(d in chosen for d in divisors(c) if d != c):
                extend(chosen | {c}, i + 1)

    extend({1}, 0)
    return found
