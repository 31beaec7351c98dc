"""Exact coefficient rings.

Ring objects are immutable descriptors that also carry the arithmetic.  Ring
elements are plain canonical payloads (``int``, ``Fraction``, tuples), so two
elements are equal exactly when their payloads compare equal.  The thin
:class:`RingElement` wrapper adds operator overloading for interactive use;
the Witt kernel works on raw payloads for speed.

Supported kinds:

========================  =====================================================
``Integers``              payload ``int``
``IntegersMod(m)``        payload ``int`` in ``[0, m)``
``PrimeField(p)``         as ``IntegersMod(p)`` with ``p`` prime
``IntegersLocalized(P)``  payload ``Fraction`` with denominator a ``P``-number
``Rationals``             payload ``Fraction``
``QuotientRing(m, f)``    ``(Z/m)[u]/(f)`` with ``f`` monic; tuple of residues
``FiniteField(p, k, f)``  ``QuotientRing(p, f)`` with ``f`` irreducible
``GaloisRing(p, N, k, f)``  ``QuotientRing(p**N, f)``, ``f mod p`` irreducible
``Polynomial(B, vars)``   sparse polynomials over a base ring ``B``
========================  =====================================================
"""

from __future__ import annotations

import itertools
import json
import math
import random as _random
import re
from fractions import Fraction
from functools import cached_property, reduce
from typing import Any, Callable, Iterable, Iterator, Sequence

from .errors import InvalidRing, NoLiftDeclared, NotDivisible, NotUnique
from .numtheory import is_prime, prime_factors


# ---------------------------------------------------------------------------
# Dense polynomials over F_p (coefficient lists, low degree first)
# ---------------------------------------------------------------------------

def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def fp_mul(a: Sequence[int], b: Sequence[int], p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def fp_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list, list]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        _trim(a)
    return _trim(q), a


def fp_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, fp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def fp_powmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> list:
    result = [1]
    base = fp_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = fp_divmod(fp_mul(result, base, p), mod, p)[1]
        base = fp_divmod(fp_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def fp_is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a polynomial over F_p."""
    f = _trim([c % p for c in f])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if fp_divmod(_sub(fp_powmod(x, p**k, f, p), x, p), f, p)[1]:
        return False
    for q in prime_factors(k):
        h = _sub(fp_powmod(x, p ** (k // q), f, p), x, p)
        if len(fp_gcd(f, h, p)) > 1:
            return False
    return True


def _sub(a: Sequence[int], b: Sequence[int], p: int) -> list:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def first_irreducible(p: int, k: int) -> list:
    """Lexicographically first monic irreducible of degree k over F_p.

    Candidates are ordered by their low coefficients read as a base-p number,
    so ``first_irreducible(2, 2) == [1, 1, 1]``.
    """
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        f = low + [1]
        if fp_is_irreducible(f, p):
            return f
    raise InvalidRing(f"no irreducible polynomial of degree {k} over F_{p}")


# ---------------------------------------------------------------------------
# Ring base class and element wrapper
# ---------------------------------------------------------------------------

class Ring:
    """Abstract commutative unital ring with canonical payloads."""

    kind = "Ring"
    #: True when multiplication by every nonzero integer is injective.
    torsion_free = False
    #: Characteristic (0 for characteristic zero).
    char = 0

    # identity ---------------------------------------------------------------
    def to_json(self) -> dict:
        raise NotImplementedError

    @cached_property
    def _key(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ring) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"<{self.name}>"

    @property
    def name(self) -> str:
        return self.kind

    def __call__(self, value: Any) -> "RingElement":
        return RingElement(self, self.coerce(value))

    # arithmetic ---------------------------------------------------------------
    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        raise NotImplementedError

    def coerce(self, value: Any):
        if isinstance(value, RingElement):
            if value.ring != self:
                raise InvalidRing(f"element of {value.ring.name} used in {self.name}")
            return value.value
        if isinstance(value, int):
            return self.from_int(value)
        return self.normalize(value)

    def normalize(self, value: Any):
        """Bring an external value into canonical payload form."""
        raise InvalidRing(f"cannot interpret {value!r} in {self.name}")

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def pow(self, a, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = self.one()
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def mul_int(self, a, n: int):
        return self.mul(self.from_int(n), a)

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def sum(self, items: Iterable) -> Any:
        return reduce(self.add, items, self.zero())

    def div_exact(self, x, n: int):
        """Return the unique ``y`` with ``n*y == x``."""
        raise NotImplementedError

    def int_is_unit(self, n: int) -> bool:
        """Whether the integer ``n`` is invertible in this ring."""
        return False

    # enumeration and sampling -------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return False

    def size(self) -> int:
        raise InvalidRing(f"{self.name} is infinite")

    def elements(self) -> Iterator:
        raise InvalidRing(f"{self.name} is infinite")

    def random(self, rng: _random.Random, bound: int | None = None):
        raise NotImplementedError

    # Frobenius ---------------------------------------------------------------
    def frobenius(self, p: int) -> Callable:
        raise NoLiftDeclared(f"{self.name} has no Frobenius lift for p={p}")

    # serialization -----------------------------------------------------------
    def encode(self, a) -> Any:
        return a

    def decode(self, data: Any):
        return self.coerce(data)

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        """Parse the textual form produced by :meth:`format`."""
        text = text.strip()
        if re.fullmatch(r"-?\d+", text):
            return self.from_int(int(text))
        raise InvalidRing(f"cannot parse {text!r} as an element of {self.name}")


class RingElement:
    """An element of a ring with Python operators."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: Ring, value: Any):
        self.ring = ring
        self.value = value

    def _other(self, other):
        return self.ring.coerce(other)

    def __add__(self, other):
        return RingElement(self.ring, self.ring.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElement(self.ring, self.ring.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return RingElement(self.ring, self.ring.sub(self._other(other), self.value))

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __pow__(self, e: int):
        return RingElement(self.ring, self.ring.pow(self.value, e))

    def __eq__(self, other):
        try:
            return self.value == self._other(other)
        except InvalidRing:
            return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.value))

    def __repr__(self):
        return self.ring.format(self.value)


# ---------------------------------------------------------------------------
# Integer-like rings
# ---------------------------------------------------------------------------

class Integers(Ring):
    kind = "Integers"
    torsion_free = True

    def to_json(self):
        return {"kind": "Integers"}

    @property
    def name(self):
        return "Z"

    def from_int(self, n):
        return int(n)

    def normalize(self, value):
        if isinstance(value, Fraction) and value.denominator == 1:
            return int(value)
        return super().normalize(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, e):
        return a**e

    def mul_int(self, a, n):
        return a * n

    def div_exact(self, x, n):
        q, r = divmod(x, n)
        if r:
            raise NotDivisible(f"{x} is not divisible by {n}")
        return q

    def int_is_unit(self, n):
        return abs(n) == 1

    def random(self, rng, bound=None):
        bound = 10**6 if bound is None else bound
        return rng.randint(-bound, bound)

    def frobenius(self, p):
        return _identity


def _identity(a):
    return a


class IntegersMod(Ring):
    kind = "IntegersMod"

    def __init__(self, m: int):
        if m < 2:
            raise InvalidRing("modulus must be at least 2")
        self.m = m
        self.char = m

    def to_json(self):
        return {"kind": "IntegersMod", "m": self.m}

    @property
    def name(self):
        return f"Z/{self.m}"

    def from_int(self, n):
        return n % self.m

    def normalize(self, value):
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.m) % self.m
        return super().normalize(value)

    def add(self, a, b):
        s = a + b
        return s - self.m if s >= self.m else s

    def sub(self, a, b):
        return (a - b) % self.m

    def neg(self, a):
        return -a % self.m

    def mul(self, a, b):
        return a * b % self.m

    def pow(self, a, e):
        return pow(a, e, self.m)

    def mul_int(self, a, n):
        return a * n % self.m

    def div_exact(self, x, n):
        g = math.gcd(n, self.m)
        if x % g:
            raise NotDivisible(f"{x} is not divisible by {n} in {self.name}")
        if g != 1:
            raise NotUnique(f"{n} is a zero divisor in {self.name}")
        return x * pow(n, -1, self.m) % self.m

    def int_is_unit(self, n):
        return math.gcd(n, self.m) == 1

    @property
    def is_finite(self):
        return True

    def size(self):
        return self.m

    def elements(self):
        return iter(range(self.m))

    def random(self, rng, bound=None):
        return rng.randrange(self.m)

    def frobenius(self, p):
        # Every residue ring of Z carries the identity as a Frobenius lift.
        return _identity


class PrimeField(IntegersMod):
    kind = "PrimeField"

    def __init__(self, p: int):
        if not is_prime(p):
            raise InvalidRing(f"{p} is not prime")
        super().__init__(p)
        self.p = p

    def to_json(self):
        return {"kind": "PrimeField", "p": self.p}

    @property
    def name(self):
        return f"F_{self.p}"



class IntegersLocalized(Ring):
    """Rationals whose denominators only involve a fixed set of primes."""

    kind = "IntegersLocalized"
    torsion_free = True

    def __init__(self, primes: Iterable[int]):
        primes = tuple(sorted(set(primes)))
        for p in primes:
            if not is_prime(p):
                raise InvalidRing(f"{p} is not prime")
        self.primes = primes

    def to_json(self):
        return {"kind": "IntegersLocalized", "primes": list(self.primes)}

    @property
    def name(self):
        return "Z[" + ",".join(f"1/{p}" for p in self.primes) + "]"

    def _allowed(self, den: int) -> bool:
        for p in self.primes:
            while den % p == 0:
                den //= p
        return den == 1

    def _check(self, q: Fraction) -> Fraction:
        if not self._allowed(q.denominator):
            raise NotDivisible(f"{q} has a denominator outside {self.name}")
        return q

    def from_int(self, n):
        return Fraction(n)

    def normalize(self, value):
        if isinstance(value, Fraction):
            return self._check(value)
        if isinstance(value, str):
            return self._check(Fraction(value))
        return super().normalize(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, e):
        return a**e

    def mul_int(self, a, n):
        return a * n

    def div_exact(self, x, n):
        return self._check(x / n)

    def int_is_unit(self, n):
        return n != 0 and self._allowed(abs(n))

    def random(self, rng, bound=None):
        bound = 1000 if bound is None else bound
        den = 1
        for p in self.primes:
            den *= p ** rng.randint(0, 3)
        return Fraction(rng.randint(-bound, bound), den)

    def frobenius(self, p):
        return _identity

    def encode(self, a):
        return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def format(self, a):
        return str(self.encode(a))

    def parse(self, text):
        text = text.strip()
        if re.fullmatch(r"-?\d+(/\d+)?", text):
            return self.normalize(Fraction(text))
        return super().parse(text)


class Rationals(IntegersLocalized):
    kind = "Rationals"

    def __init__(self):
        self.primes = ()

    def to_json(self):
        return {"kind": "Rationals"}

    @property
    def name(self):
        return "Q"

    def _allowed(self, den):
        return True


# ---------------------------------------------------------------------------
# Quotients of (Z/m)[u] by a monic polynomial
# ---------------------------------------------------------------------------

class QuotientRing(Ring):
    """The ring ``(Z/m)[u]/(f)`` for a monic ``f`` (coefficients low first)."""

    kind = "QuotientRing"
    gen = "u"

    def __init__(self, m: int, modulus: Sequence[int]):
        modulus = [int(c) for c in modulus]
        if len(modulus) < 2 or modulus[-1] != 1:
            raise InvalidRing("modulus must be monic of degree at least 1")
        if m < 2:
            raise InvalidRing("coefficient modulus must be at least 2")
        self.m = m
        self.char = m
        self.modulus = tuple(c % m for c in modulus[:-1]) + (1,)
        self.k = len(modulus) - 1
    def to_json(self):
        return {"kind": "QuotientRing", "m": self.m, "modulus": list(self.modulus)}

    @property
    def name(self):
        terms = [f"u^{i}" if i > 1 else ("u" if i == 1 else "1")
                 for i, c in enumerate(self.modulus) if c]
        return f"(Z/{self.m})[u]/({'+'.join(reversed(terms))})"

    def from_int(self, n):
        return (n % self.m,) + (0,) * (self.k - 1)

    def normalize(self, value):
        if isinstance(value, (list, tuple)):
            coeffs = [int(c) for c in value]
            return self._reduce(coeffs)
        return super().normalize(value)

    def _reduce(self, coeffs: list):
        m, k, f = self.m, self.k, self.modulus
        coeffs = list(coeffs)
        for j in range(len(coeffs) - 1, k - 1, -1):
            c = coeffs[j] % m
            if c:
                base = j - k
                for i in range(k):
                    coeffs[base + i] -= c * f[i]
        out = [c % m for c in coeffs[:k]]
        return tuple(out) + (0,) * (k - len(out))

    def add(self, a, b):
        m = self.m
        return tuple((x + y) % m for x, y in zip(a, b))

    def sub(self, a, b):
        m = self.m
        return tuple((x - y) % m for x, y in zip(a, b))

    def neg(self, a):
        m = self.m
        return tuple(-x % m for x in a)

    def mul(self, a, b):
        k = self.k
        if k == 1:
            return (a[0] * b[0] % self.m,)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self._reduce(prod)

    def mul_int(self, a, n):
        m = self.m
        return tuple(x * n % m for x in a)

    def div_exact(self, x, n):
        g = math.gcd(n, self.m)
        if any(c % g for c in x):
            raise NotDivisible(f"{self.format(x)} is not divisible by {n} in {self.name}")
        if g != 1:
            raise NotUnique(f"{n} is a zero divisor in {self.name}")
        inv = pow(n, -1, self.m)
        return tuple(c * inv % self.m for c in x)

    def int_is_unit(self, n):
        return math.gcd(n, self.m) == 1

    @property
    def is_finite(self):
        return True

    def size(self):
        return self.m**self.k

    def elements(self):
        return (tuple(t) for t in itertools.product(range(self.m), repeat=self.k))

    def random(self, rng, bound=None):
        return tuple(rng.randrange(self.m) for _ in range(self.k))

    def generator(self):
        """The class of ``u``."""
        return self.normalize([0, 1])

    def frobenius(self, p):
        if self.m == p:
            return lambda a: self.pow(a, p)
        raise NoLiftDeclared(f"{self.name} has no Frobenius lift for p={p}")

    def encode(self, a):
        return list(a)

    def decode(self, data):
        return self.normalize(data)

    def format(self, a):
        return "[" + ",".join(str(c) for c in a) + "]"

    def parse(self, text):
        text = text.strip()
        if text.startswith("[") and text.endswith("]"):
            body = text[1:-1].strip()
            return self.normalize([int(c) for c in body.split(",")] if body else [0])
        return super().parse(text)


class FiniteField(QuotientRing):
    """``F_p[u]/(f)`` with ``f`` monic irreducible of degree ``k``."""

    kind = "FiniteField"

    def __init__(self, p: int, k: int, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise InvalidRing(f"{p} is not prime")
        if modulus is None:
            modulus = first_irreducible(p, k)
        if len(modulus) - 1 != k:
            raise InvalidRing(f"modulus degree {len(modulus) - 1} differs from k={k}")
        if not fp_is_irreducible(modulus, p):
            raise InvalidRing(f"modulus {list(modulus)} is reducible over F_{p}")
        super().__init__(p, modulus)
        self.p = p

    def to_json(self):
        return {"kind": "FiniteField", "p": self.p, "k": self.k, "modulus": list(self.modulus)}

    @property
    def name(self):
        return f"F_{self.p}^{self.k}" if self.k > 1 else f"F_{self.p}"

    def inverse(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(a, self.size() - 2)

    def frobenius(self, p):
        if p == self.p:
            return lambda a: self.pow(a, p)
        raise NoLiftDeclared(f"{self.name} has no Frobenius lift for p={p}")

    def frobenius_inverse(self, a):
        """The unique ``b`` with ``b**p == a``."""
        return self.pow(a, self.p ** (self.k - 1))


class GaloisRing(QuotientRing):
    """``GR(p^N, k) = (Z/p^N)[u]/(f)`` with ``f mod p`` irreducible."""

    kind = "GaloisRing"

    def __init__(self, p: int, N: int, k: int, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise InvalidRing(f"{p} is not prime")
        if N < 1:
            raise InvalidRing("precision N must be positive")
        if modulus is None:
            modulus = first_irreducible(p, k)
        if len(modulus) - 1 != k:
            raise InvalidRing(f"modulus degree {len(modulus) - 1} differs from k={k}")
        if not fp_is_irreducible([c % p for c in modulus], p):
            raise InvalidRing(f"modulus {list(modulus)} is reducible mod {p}")
        super().__init__(p**N, modulus)
        self.p, self.N = p, N

    def to_json(self):
        return {"kind": "GaloisRing", "p": self.p, "N": self.N, "k": self.k,
                "modulus": list(self.modulus)}

    @property
    def name(self):
        return f"GR({self.p}^{self.N},{self.k})"

    @cached_property
    def residue_field(self) -> FiniteField:
        return FiniteField(self.p, self.k, [c % self.p for c in self.modulus])

    def reduce(self, a):
        """Reduction to the residue field."""
        return tuple(c % self.p for c in a)

    def lift(self, a):
        """Canonical lift of a residue-field element (coefficients in [0, p))."""
        return tuple(a)

    def unit_group_order(self) -> int:
        q = self.p**self.k
        return (q - 1) * q ** (self.N - 1)

    def is_unit(self, a) -> bool:
        return any(c % self.p for c in a)

    def inverse(self, a):
        if not self.is_unit(a):
            raise NotDivisible(f"{self.format(a)} is not a unit")
        return self.pow(a, self.unit_group_order() - 1)

    def teichmuller(self, a):
        """Multiplicative representative with the same residue as ``a``."""
        return self.pow(a, (self.p**self.k) ** self.N)

    @cached_property
    def _frob_images(self) -> list:
        """Images of ``1, u, ..., u^{k-1}`` under the Frobenius lift."""
        f = self.modulus
        u = self.generator()

        def evaluate(coeffs, y):
            acc = self.zero()
            for c in reversed(coeffs):
                acc = self.add(self.mul(acc, y), self.from_int(c))
            return acc

        deriv = [i * c for i, c in enumerate(f)][1:]
        y = self.pow(u, self.p)
        for _ in range(4 * self.N + 8):
            step = self.mul(evaluate(f, y), self.inverse(evaluate(deriv, y)))
            if self.is_zero(step):
                break
            y = self.sub(y, step)
        images = [self.one()]
        for _ in range(self.k - 1):
            images.append(self.mul(images[-1], y))
        return images

    def frobenius_map(self, a):
        imgs = self._frob_images
        out = self.zero()
        for c, img in zip(a, imgs):
            if c:
                out = self.add(out, self.mul_int(img, c))
        return out

    def frobenius(self, p):
        if p == self.p:
            return self.frobenius_map
        raise NoLiftDeclared(f"{self.name} has no Frobenius lift for p={p}")


# ---------------------------------------------------------------------------
# Polynomial rings
# ---------------------------------------------------------------------------

_MONO_RE = re.compile(r"^([A-Za-z_]\w*)(?:\^(\d+))?$")


class Polynomial(Ring):
    """Sparse polynomials ``B[x_1, ..., x_d]``.

    Payload: tuple of ``(exponents, coeff)`` pairs sorted by exponents, with
    nonzero base-ring coefficients.
    """

    kind = "Polynomial"

    def __init__(self, base: Ring, variables: Sequence[str]):
        if not variables:
            raise InvalidRing("a polynomial ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise InvalidRing("variable names must be distinct")
        self.base = base
        self.variables = tuple(variables)
        self.nvars = len(variables)
        self.torsion_free = base.torsion_free
        self.char = base.char
        self._zero_exp = (0,) * self.nvars

    def to_json(self):
        return {"kind": "Polynomial", "base": self.base.to_json(), "variables": list(self.variables)}

    @property
    def name(self):
        return f"{self.base.name}[{','.join(self.variables)}]"

    def _pack(self, d: dict) -> tuple:
        bz = self.base.zero()
        return tuple(sorted((e, c) for e, c in d.items() if c != bz))

    def from_int(self, n):
        c = self.base.from_int(n)
        return () if c == self.base.zero() else ((self._zero_exp, c),)

    def const(self, c):
        return () if c == self.base.zero() else ((self._zero_exp, c),)

    def var(self, i: int | str):
        if isinstance(i, str):
            i = self.variables.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return ((tuple(e), self.base.one()),)

    def monomial(self, exps: Sequence[int], coeff=None):
        c = self.base.one() if coeff is None else coeff
        return self._pack({tuple(exps): c})

    def normalize(self, value):
        if isinstance(value, dict):
            return self._pack({tuple(e): self.base.coerce(c) for e, c in value.items()})
        if isinstance(value, tuple) and all(isinstance(t, tuple) and len(t) == 2 for t in value):
            return self._pack({tuple(e): self.base.coerce(c) for e, c in value})
        return self.const(self.base.coerce(value))

    def terms(self, a) -> dict:
        return dict(a)

    def add(self, a, b):
        if not a:
            return b
        if not b:
            return a
        d = dict(a)
        badd = self.base.add
        for e, c in b:
            d[e] = badd(d[e], c) if e in d else c
        return self._pack(d)

    def neg(self, a):
        bneg = self.base.neg
        return tuple((e, bneg(c)) for e, c in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        d: dict = {}
        bmul, badd = self.base.mul, self.base.add
        for e1, c1 in a:
            for e2, c2 in b:
                e = tuple(x + y for x, y in zip(e1, e2))
                c = bmul(c1, c2)
                d[e] = badd(d[e], c) if e in d else c
        return self._pack(d)

    def mul_int(self, a, n):
        return self._pack({e: self.base.mul_int(c, n) for e, c in a})

    def div_exact(self, x, n):
        return tuple((e, self.base.div_exact(c, n)) for e, c in x)

    def int_is_unit(self, n):
        return self.base.int_is_unit(n)

    def random(self, rng, bound=None, max_terms: int = 3, max_degree: int = 2):
        d = {}
        for _ in range(rng.randint(0, max_terms)):
            e = tuple(rng.randint(0, max_degree) for _ in range(self.nvars))
            d[e] = self.base.random(rng, bound if bound is not None else 5)
        return self._pack(d)

    def degree(self, a) -> int:
        return max((sum(e) for e, _ in a), default=-1)

    def substitute(self, a, images: Sequence, coeff_map: Callable | None = None):
        """Evaluate ``a`` at ring elements ``images`` (coefficients optionally mapped)."""
        out = self.zero()
        for e, c in a:
            term = self.const(coeff_map(c) if coeff_map else c)
            for img, k in zip(images, e):
                if k:
                    term = self.mul(term, self.pow(img, k))
            out = self.add(out, term)
        return out

    def frobenius(self, p):
        base_phi = self.base.frobenius(p)

        def phi(a):
            return self._pack({tuple(k * p for k in e): base_phi(c) for e, c in a})

        return phi

    def encode(self, a):
        return [[list(e), self.base.encode(c)] for e, c in a]

    def decode(self, data):
        if isinstance(data, list):
            return self._pack({tuple(e): self.base.decode(c) for e, c in data})
        return super().decode(data)

    def format(self, a):
        if not a:
            return "0"
        parts = []
        for e, c in sorted(a, key=lambda t: (-sum(t[0]), t[0])):
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.variables, e) if k
            )
            cs = self.base.format(c)
            if not mono:
                parts.append(cs)
            elif c == self.base.one():
                parts.append(mono)
            elif c == self.base.neg(self.base.one()):
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        text = "+".join(parts)
        return text.replace("+-", "-")

    def parse(self, text):
        text = text.replace(" ", "")
        if not text:
            raise InvalidRing("empty polynomial")
        tokens = re.findall(r"[+-]?[^+-]+", text.replace("^-", "^~"))
        total = self.zero()
        for tok in tokens:
            tok = tok.replace("^~", "^-")
            sign = -1 if tok.startswith("-") else 1
            tok = tok.lstrip("+-")
            term = self.from_int(sign)
            for factor in tok.split("*"):
                m = _MONO_RE.match(factor)
                if m and m.group(1) in self.variables:
                    term = self.mul(term, self.pow(self.var(m.group(1)), int(m.group(2) or 1)))
                else:
                    term = self.mul(term, self.const(self.base.parse(factor)))
            total = self.add(total, term)
        return total


# ---------------------------------------------------------------------------
# JSON round trip and Frobenius lookup
# ---------------------------------------------------------------------------

def ring_from_json(data: dict | str) -> Ring:
    """Build a ring from its JSON descriptor."""
    if isinstance(data, str):
        data = json.loads(data)
    kind = data.get("kind")
    try:
        if kind == "Integers":
            return Integers()
        if kind == "IntegersMod":
            return IntegersMod(int(data["m"]))
        if kind == "PrimeField":
            return PrimeField(int(data["p"]))
        if kind == "IntegersLocalized":
            return IntegersLocalized(data["primes"])
        if kind == "Rationals":
            return Rationals()
        if kind == "QuotientRing":
            return QuotientRing(int(data["m"]), data["modulus"])
        if kind == "FiniteField":
            return FiniteField(int(data["p"]), int(data["k"]), data.get("modulus"))
        if kind == "GaloisRing":
            return GaloisRing(int(data["p"]), int(data["N"]), int(data["k"]), data.get("modulus"))
        if kind == "Polynomial":
            return Polynomial(ring_from_json(data["base"]), data["variables"])
    except KeyError as exc:
        raise InvalidRing(f"descriptor for {kind} is missing field {exc}") from None
    raise InvalidRing(f"unknown ring kind {kind!r}")


def frobenius_lift(ring: Ring, p: int) -> Callable:
    """The registered ring endomorphism lifting ``a -> a**p`` modulo ``p``."""
    if not is_prime(p):
        raise NoLiftDeclared(f"{p} is not prime")
    return ring.frobenius(p)


def ring_div_exact(x, n: int, ring: Ring):
    """``y`` with ``n*y == x``; raises NotDivisible or NotUnique."""
    if n <= 0:
        raise ValueError("n must be positive")
    return ring.div_exact(x, n)


ZZ = Integers()
QQ = Rationals()
