"""Linear factorization of truncated polynomials over finite fields.

Three layers:

* :func:`power_sum_family` finds pairs ``(a_i, b_i)`` in a Galois ring
  ``GR(p^N, k)`` whose power sums satisfy
  ``sum (a_i + b_i x)^l = 0`` for ``l < m`` and ``= m x`` for ``l = m``,
  all modulo ``p^N``.  Every result is checked by expansion.
* :func:`linear_factor_data` turns such data into linear factors ``1 - f_i t``
  whose product is ``1 - x t^m`` modulo ``(p^n, t^(m+1))``.
* :func:`factor_mod_tm` writes any ``Q = 1 + c_1 t + ...`` over a finite
  field as a product of terms ``1 - rho t`` modulo ``t^(m+1)``, after
  passing to a large enough extension field.

Pairs and factors carry multiplicities so long products stay cheap.
"""

from __future__ import annotations

import itertools
import math
import random as _random
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ConstructionFailed, MismatchedShape, TooLarge
from .numtheory import prime_factors
from .rings import FiniteField, GaloisRing, IntegersMod
from .series import TruncatedSeries

# ---------------------------------------------------------------------------
# Galois ring helpers
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _primitive_element(F: FiniteField):
    q1 = F.size() - 1
    primes = prime_factors(q1) if q1 > 1 else []
    for g in F.elements():
        if F.is_zero(g):
            continue
        if all(F.pow(g, q1 // ell) != F.one() for ell in primes):
            return g
    raise ConstructionFailed("no primitive element found")


@lru_cache(maxsize=None)
def _baby_steps(F: FiniteField) -> tuple:
    g = _primitive_element(F)
    n = F.size() - 1
    step = math.isqrt(n) + 1
    table, y = {}, F.one()
    for j in range(step):
        table.setdefault(y, j)
        y = F.mul(y, g)
    return table, step, F.inverse(F.pow(g, step))


def discrete_log(F: FiniteField, y) -> int:
    """``e`` with ``g^e == y`` for the cached primitive element ``g``."""
    table, step, giant = _baby_steps(F)
    cur = y
    for i in range(step + 1):
        j = table.get(cur)
        if j is not None:
            return i * step + j
        cur = F.mul(cur, giant)
    raise ValueError("element is not a unit")


def field_root(F: FiniteField, y, m: int):
    """Some ``z`` in ``F`` with ``z^m == y``, or None."""
    if F.is_zero(y):
        return F.zero()
    n = F.size() - 1
    e = discrete_log(F, y)
    g = math.gcd(m, n)
    if e % g:
        return None
    x = (e // g) * pow(m // g, -1, n // g) % (n // g)
    return F.pow(_primitive_element(F), x)


def roots_of_unity(GR: GaloisRing, d: int) -> list:
    """The ``d`` Teichmueller ``d``-th roots of unity in ``GR``."""
    q1 = GR.p**GR.k - 1
    if q1 % d:
        raise ConstructionFailed(f"mu_{d} is not contained in {GR.name}")
    g = GR.teichmuller(GR.lift(_primitive_element(GR.residue_field)))
    zeta = GR.pow(g, q1 // d)
    return [GR.pow(zeta, j) for j in range(d)]


def _solve_linear(GR: GaloisRing, A: list, rhs: list):
    """Solve ``A c = rhs`` over a Galois ring; None when the reduction is singular."""
    n = len(A)
    M = [list(row) + [rhs[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if GR.is_unit(M[r][col])), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = GR.inverse(M[col][col])
        M[col] = [GR.mul(inv, v) for v in M[col]]
        for r in range(n):
            if r != col and not GR.is_zero(M[r][col]):
                f = M[r][col]
                M[r] = [GR.sub(v, GR.mul(f, w)) for v, w in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def _hensel_root(GR: GaloisRing, c, m: int):
    """An ``m``-th root of ``c`` whose residue is a nonzero ``m``-th power (``p`` not dividing ``m``)."""
    root = field_root(GR.residue_field, GR.reduce(c), m)
    if root is None or GR.residue_field.is_zero(root):
        return None
    y = GR.lift(root)
    for _ in range(2 * GR.N + 4):
        err = GR.sub(GR.pow(y, m), c)
        if GR.is_zero(err):
            return y
        y = GR.sub(y, GR.mul(err, GR.inverse(GR.mul_int(GR.pow(y, m - 1), m))))
    return y if GR.pow(y, m) == c else None


def sum_of_powers(GR: GaloisRing, c, m: int, max_terms: int = 3):
    """Elements ``e_j`` with ``sum e_j^m == c``, or None.

    Used when ``c`` itself has no ``m``-th root: one summand absorbs the
    remainder by Hensel lifting, the others range over residue lifts.
    """
    if GR.is_zero(c):
        return []
    direct = _hensel_root(GR, c, m)
    if direct is not None:
        return [direct]
    F = GR.residue_field
    units = [y for y in itertools.islice(F.elements(), 1, 200) if not F.is_zero(y)]
    for extra in range(1, max_terms):
        for combo in itertools.combinations_with_replacement(units, extra):
            lifts = [GR.lift(y) for y in combo]
            rest = c
            for e in lifts:
                rest = GR.sub(rest, GR.pow(e, m))
            root = _hensel_root(GR, rest, m)
            if root is not None:
                return [root, *lifts]
    return None


# ---------------------------------------------------------------------------
# Power-sum families of pairs
# ---------------------------------------------------------------------------


@dataclass
class PowerSumFamily:
    """Pairs ``(a_i, b_i)`` with multiplicities over ``GR(p^N, k)``."""

    p: int
    m: int
    N: int
    ring: GaloisRing
    pairs: list
    method: str = ""

    @property
    def k(self) -> int:
        return self.ring.k

    def size(self) -> int:
        return sum(mult for _, _, mult in self.pairs)

    def expanded(self) -> list:
        return [(a, b) for a, b, mult in self.pairs for _ in range(mult)]

    def power_sum(self, l: int) -> list:
        """Coefficients in ``x`` of ``sum_i (a_i + b_i x)^l``."""
        GR = self.ring
        out = [GR.zero()] * (l + 1)
        for a, b, mult in self.pairs:
            for j in range(l + 1):
                term = GR.mul(GR.pow(a, l - j), GR.pow(b, j))
                out[j] = GR.add(out[j], GR.mul_int(term, math.comb(l, j) * mult))
        return out

    def failures(self) -> list:
        """Exponents ``l`` whose congruence fails (empty when valid)."""
        GR = self.ring
        bad = []
        for l in range(1, self.m + 1):
            want = [GR.zero()] * (l + 1)
            if l == self.m:
                want[1] = GR.from_int(self.m)
            if self.power_sum(l) != want:
                bad.append(l)
        return bad

    def verify(self) -> bool:
        return not self.failures()

    def to_json(self) -> dict:
        enc = self.ring.encode
        return {
            "p": self.p, "m": self.m, "N": self.N, "k": self.k,
            "ring": self.ring.to_json(),
            "method": self.method,
            "pairs": [{"a": enc(a), "b": enc(b), "multiplicity": mult} for a, b, mult in self.pairs],
        }


def _unit_construction(p: int, m: int, N: int, k: int, rng) -> PowerSumFamily | None:
    """Roots of unity of order ``m - 1`` (case ``m`` not 1 mod ``p``)."""
    d = m - 1
    order = 2 * d if p != 2 else d
    if (p**k - 1) % order:
        return None
    GR = GaloisRing(p, N, k)
    mod = p**N
    theta = roots_of_unity(GR, d)
    lam = GR.from_int(-1) if p == 2 else roots_of_unity(GR, 2 * d)[1]
    g = pow(d, -1, mod)
    pairs = [(t, GR.one(), g) for t in theta]
    pairs += [(GR.mul(lam, t), GR.zero(), g) for t in theta]
    rest = (-g * d) % mod
    if rest:
        pairs.append((GR.zero(), GR.one(), rest))
    return PowerSumFamily(p, m, N, GR, pairs, "roots of unity of order m-1")


def _vandermonde_construction(p: int, m: int, N: int, k: int, rng, attempts: int = 12) -> PowerSumFamily | None:
    """Copies of the ``m``-th roots of unity weighted by a Vandermonde solve.

    The weights ``c_h`` solve ``sum_h c_h xi_h^l = [l == 1] / m`` for
    ``l = 0..m``; each ``c_h`` is then written as a sum of ``m``-th powers.
    """
    if m % p == 0 or (p**k - 1) % m or p**k < m + 1:
        return None
    GR = GaloisRing(p, N, k)
    gamma = roots_of_unity(GR, m)
    F = GR.residue_field
    residues = list(itertools.islice(F.elements(), 4 * (m + 1)))
    minv = GR.inverse(GR.from_int(m))
    for _ in range(attempts):
        xi = [GR.teichmuller(GR.lift(r)) for r in rng.sample(residues, m + 1)]
        A = [[GR.pow(x, l) for x in xi] for l in range(m + 1)]
        rhs = [GR.zero()] * (m + 1)
        rhs[1] = minv
        c = _solve_linear(GR, A, rhs)
        if c is None:
            continue
        pairs = []
        for ch, x in zip(c, xi):
            parts = sum_of_powers(GR, ch, m)
            if parts is None:
                break
            for alpha in parts:
                beta = GR.mul(alpha, x)
                pairs += [(GR.mul(gm, alpha), GR.mul(gm, beta), 1) for gm in gamma]
        else:
            return PowerSumFamily(p, m, N, GR, pairs, "m-th roots of unity with Vandermonde weights")
    return None


def _signed_unit_construction(p: int, m: int, N: int, k: int, rng) -> PowerSumFamily | None:
    """Direct construction for ``m = 2`` from the values 0 and +-1.

    The pair (1, 1) gives the cross term; ``u`` copies each of (1, 0) and
    (0, 1) and ``u + 1`` copies each of (-1, 0) and (0, -1) cancel the first
    and second power sums, where ``2u + 2 = 0`` modulo ``p^N``.
    """
    if m != 2:
        return None
    mod = p**N
    u = next((u for u in range(mod) if (2 * u + 2) % mod == 0), None)
    if u is None:
        return None
    GR = GaloisRing(p, N, k)
    one, zero, mone = GR.one(), GR.zero(), GR.from_int(-1)
    pairs = [(one, one, 1)]
    for count, a in ((u, one), ((u + 1) % mod, mone)):
        if count:
            pairs.append((a, zero, count))
            pairs.append((zero, a, count))
    return PowerSumFamily(p, m, N, GR, pairs, "signed units")


MAX_DEGREE = 24


@lru_cache(maxsize=None)
def power_sum_family(p: int, m: int, N: int, k: int | None = None, seed: int = 0) -> PowerSumFamily:
    """Verified power-sum family of pairs over ``GR(p^N, k)``.

    Without ``k`` the smallest workable degree is used.  For ``m`` not 1
    mod ``p`` the roots-of-unity construction comes first; whenever a
    candidate fails its expansion check the Vandermonde construction and
    then the direct ``m = 2`` construction are tried.
    """
    if m < 2 or N < 1:
        raise ConstructionFailed("need m >= 2 and N >= 1")
    if m % p == 1:
        builders = [_vandermonde_construction]
    else:
        builders = [_unit_construction, _vandermonde_construction, _signed_unit_construction]
    degrees = [k] if k is not None else range(1, MAX_DEGREE + 1)
    tried = []
    for kk in degrees:
        for build in builders:
            data = build(p, m, N, kk, _random.Random(seed))
            if data is None:
                continue
            if data.verify():
                return data
            tried.append((data.method, kk))
    raise ConstructionFailed(f"no verified data for p={p}, m={m}, N={N}; rejected {tried}")


# ---------------------------------------------------------------------------
# 1 - x t^m as a product of linear factors
# ---------------------------------------------------------------------------


def _bi_mul(GR, A: list, B: list, m: int) -> list:
    """Product of series in ``t`` (up to ``t^m``) with polynomial-in-x coefficients."""
    out = [[GR.zero()] * (j + 1) for j in range(m + 1)]
    for i, ai in enumerate(A):
        for j in range(m + 1 - i):
            bj = B[j]
            row = out[i + j]
            for u, x in enumerate(ai):
                if GR.is_zero(x):
                    continue
                for v, y in enumerate(bj):
                    if not GR.is_zero(y):
                        row[u + v] = GR.add(row[u + v], GR.mul(x, y))
    return out


def _bi_pow(GR, A: list, e: int, m: int) -> list:
    result = [[GR.one()]] + [[GR.zero()] * (j + 1) for j in range(1, m + 1)]
    while e:
        if e & 1:
            result = _bi_mul(GR, result, A, m)
        e >>= 1
        if e:
            A = _bi_mul(GR, A, A, m)
    return result


@dataclass
class LinearFactorData:
    """Linear factors ``f_i = a_i + b_i x`` (with multiplicities)."""

    p: int
    m: int
    n: int
    family: PowerSumFamily
    verified: bool = False

    @property
    def ring(self) -> GaloisRing:
        return self.family.ring

    @property
    def factors(self) -> list:
        return self.family.pairs

    def product(self) -> list:
        """``prod (1 - f_i t)^mult`` as rows ``[t^j] -> coefficients in x``."""
        GR, m = self.ring, self.m
        total = [[GR.one()]] + [[GR.zero()] * (j + 1) for j in range(1, m + 1)]
        for a, b, mult in self.factors:
            lin = [[GR.one()], [GR.neg(a), GR.neg(b)]] + [[GR.zero()] * (j + 1) for j in range(2, m + 1)]
            total = _bi_mul(GR, total, _bi_pow(GR, lin, mult, m), m)
        return total

    def check(self) -> bool:
        """``prod (1 - f_i t) = 1 - x t^m`` modulo ``(p^n, t^(m+1))``."""
        GR, m = self.ring, self.m
        mod = self.p**self.n
        prod = self.product()
        for j, row in enumerate(prod):
            for d, c in enumerate(row):
                want = 1 if (j, d) == (0, 0) else (-1 if (j, d) == (m, 1) else 0)
                if any((ci - (want if idx == 0 else 0)) % mod for idx, ci in enumerate(c)):
                    return False
        return True

    def reduced(self, F: FiniteField) -> list:
        """Factors reduced modulo ``p`` as ``(a~, b~, mult)`` in ``F``."""
        return [(F.normalize(list(self.ring.reduce(a))), F.normalize(list(self.ring.reduce(b))), mult)
                for a, b, mult in self.factors]


def _B(p: int, m: int) -> int:
    B = 0
    while p ** (B + 1) <= m:
        B += 1
    return B


@lru_cache(maxsize=None)
def linear_factor_data(p: int, m: int, n: int, k: int | None = None) -> LinearFactorData:
    """Factors of ``1 - x t^m`` modulo ``(p^n, t^(m+1))``, verified by expansion."""
    N = n + _B(p, m)
    data = LinearFactorData(p, m, n, power_sum_family(p, m, N, k))
    data.verified = data.check()
    if not data.verified:
        raise ConstructionFailed(f"product identity failed for p={p}, m={m}, n={n}")
    return data


# ---------------------------------------------------------------------------
# Factorization of truncated polynomials over finite fields
# ---------------------------------------------------------------------------


@dataclass
class Factorization:
    """``Q = prod (1 - rho t)^mult`` modulo ``t^(m+1)`` over ``field``."""

    field: FiniteField
    m: int
    factors: list = field(default_factory=list)
    target: TruncatedSeries | None = None

    @property
    def k_star(self) -> int:
        return self.field.k

    def rhos(self) -> list:
        return [rho for rho, mult in self.factors for _ in range(mult)]

    def product(self) -> TruncatedSeries:
        F, m = self.field, self.m
        out = TruncatedSeries.one(F, m)
        for rho, mult in self.factors:
            out = out * TruncatedSeries.binomial(F, m, rho) ** mult
        return out

    def verify(self) -> bool:
        return self.target is not None and self.product() == self.target

    def to_json(self) -> dict:
        F = self.field
        return {
            "field": F.to_json(),
            "k_star": self.k_star,
            "m": self.m,
            "factors": [{"rho": F.encode(r), "multiplicity": e} for r, e in self.factors],
            "verified": self.verify(),
        }


def field_embedding(small: FiniteField, big: FiniteField):
    """A ring map ``small -> big`` sending the generator to a root of its modulus."""
    if small.p != big.p or big.k % small.k:
        raise MismatchedShape(f"{small.name} does not embed in {big.name}")
    f = small.modulus
    # roots lie in the subfield of order p^j, generated by g^((q-1)/(p^j-1))
    q1, s1 = big.size() - 1, small.size() - 1
    h = big.pow(_primitive_element(big), q1 // s1)
    # for k = 1 the modulus may be u itself, whose root is 0
    candidates = [big.zero()]
    y = big.one()
    for _ in range(s1):
        candidates.append(y)
        y = big.mul(y, h)
    root = None
    for y in candidates:
        acc = big.zero()
        for c in reversed(f):
            acc = big.add(big.mul(acc, y), big.from_int(c))
        if big.is_zero(acc):
            root = y
            break
    if root is None:
        raise ConstructionFailed("modulus has no root in the larger field")
    powers = [big.one()]
    for _ in range(small.k - 1):
        powers.append(big.mul(powers[-1], root))

    def embed(a):
        out = big.zero()
        for c, pw in zip(a, powers):
            if c:
                out = big.add(out, big.mul_int(pw, c))
        return out

    return embed


MAX_FIELD_SIZE = 2**22


@lru_cache(maxsize=None)
def working_degree(p: int, m: int, base: int = 1) -> int:
    """Smallest multiple of ``base`` hosting verified factor data for every level up to ``m``."""
    K = base
    while p**K <= MAX_FIELD_SIZE:
        try:
            for mm in range(2, m + 1):
                linear_factor_data(p, mm, 1, K)
            return K
        except ConstructionFailed:
            K += base
    raise TooLarge(f"no extension of degree a multiple of {base} up to size {MAX_FIELD_SIZE}")


def factor_mod_tm(Q: TruncatedSeries, m: int | None = None) -> Factorization:
    """Write ``Q`` as a product of ``1 - rho t`` modulo ``t^(m+1)``.

    Induction on ``m``: with ``Q`` already matched modulo ``t^m``, the
    quotient is ``1 - b t^m`` and the reduced linear factors specialized at
    ``x = b`` supply the missing terms.
    """
    F0 = Q.ring
    if not isinstance(F0, FiniteField):
        raise MismatchedShape("factorization needs a finite field of coefficients")
    m = Q.m if m is None else m
    p = F0.p
    K = working_degree(p, m, F0.k)
    F = FiniteField(p, K)
    embed = (lambda a: a) if F == F0 else field_embedding(F0, F)
    target = TruncatedSeries(F, m, [embed(c) for c in Q.coeffs[:m]])
    reduced = {mm: linear_factor_data(p, mm, 1, K).reduced(F) for mm in range(2, m + 1)}

    factors: dict = {}
    current = TruncatedSeries.one(F, m)
    for level in range(1, m + 1):
        b = F.neg((target * current.inverse())[level])
        if F.is_zero(b):
            continue
        if level == 1:
            new = [(b, 1)]
        else:
            new = [(F.add(a, F.mul(bb, b)), mult) for a, bb, mult in reduced[level]]
        for rho, mult in new:
            if F.is_zero(rho):
                continue
            factors[rho] = factors.get(rho, 0) + mult
            current = current * TruncatedSeries.binomial(F, m, rho) ** mult
    result = Factorization(F, m, sorted(factors.items()), target)
    if not result.verify():
        raise ConstructionFailed("factor product does not reproduce Q")
    return result


def count_representable(p: int, m: int, limit: int = 2**16) -> dict:
    """Count classes mod ``t^(m+1)`` of products ``prod_{a in F_p^*} (1 - a t)^(b_a)``."""
    if p**m > limit:
        raise TooLarge(f"p^m = {p**m} exceeds {limit}")
    r = 1
    while p**r <= m:
        r += 1
    if p ** (r * (p - 1)) > 4 * limit:
        raise TooLarge("too many exponent vectors")
    F = IntegersMod(p)
    base = {a: TruncatedSeries.binomial(F, m, a) for a in range(1, p)}
    powers = {a: [base[a] ** e for e in range(p**r)] for a in base}
    seen = set()
    for exps in itertools.product(range(p**r), repeat=p - 1):
        prod = TruncatedSeries.one(F, m)
        for a, e in zip(range(1, p), exps):
            prod = prod * powers[a][e]
        seen.add(prod.coeffs)
    return {"representable": len(seen), "total": p**m, "r": r}
