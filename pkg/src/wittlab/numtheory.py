"""Small integer helpers shared across modules."""

from __future__ import annotations

from functools import lru_cache


@lru_cache(maxsize=None)
def factorize(n: int) -> dict:
    """Prime factorization of a positive integer as ``{p: exponent}``."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def prime_factors(n: int) -> list:
    return sorted(factorize(n))


def omega(n: int) -> int:
    """Number of prime factors counted with multiplicity."""
    return sum(factorize(n).values())


def vp(n: int, p: int) -> int:
    """The p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def divisors(n: int) -> list:
    out = [1]
    for p, e in factorize(n).items():
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def lcm(a: int, b: int) -> int:
    from math import gcd

    return a // gcd(a, b) * b


def multiplicative_order(a: int, n: int) -> int:
    """Order of ``a`` in ``(Z/n)^*``."""
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k
