"""Tuples of differential forms indexed by a truncation set.

Over a polynomial ring ``A = Q[t_1..t_d]`` an ``r``-form is stored as a
tuple of ``(indices, coefficient)`` pairs, where ``indices`` is a strictly
increasing tuple naming ``dt_i1 ^ ... ^ dt_ir`` and the coefficient is a
payload of :class:`~wittlab.rings.Polynomial` over the rationals.  A
:class:`FormTuple` is a family ``(omega_n)_{n in S}`` of such forms with

* the differential ``dd(omega)_n = d(omega_n) / n``,
* ``F_m(omega)_v = omega_{vm}`` on ``S/m``,
* ``V_n(omega)_v = n * omega_{v/n}`` when ``n | v`` and 0 otherwise.

Words ``V_n0<a0> dd V_n1<a1> ... dd V_nr<ar>`` realize as integral tuples,
and :func:`verify_operator_identities` checks the operator identities between
``dd``, ``F`` and ``V`` on random samples.
"""

from __future__ import annotations

import itertools
import math
import random as _random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from .errors import MismatchedShape, NotAMember
from .lattice import hnf_span
from .numtheory import egcd
from .rings import QQ, Polynomial
from .truncation import TruncationSet
from .witt import ghost_of, teichmuller, verschiebung

# ---------------------------------------------------------------------------
# Single forms
# ---------------------------------------------------------------------------


def polynomial_ring(d: int, names: Sequence[str] | None = None) -> Polynomial:
    """``Q[t_1..t_d]`` (variables ``x, y, z`` for small ``d``)."""
    if names is None:
        names = ["x", "y", "z", "w"][:d] if d <= 4 else [f"t{i}" for i in range(1, d + 1)]
    return Polynomial(QQ, list(names))


def _pack(A: Polynomial, d: dict) -> tuple:
    return tuple(sorted((I, c) for I, c in d.items() if c))


def form_add(A, f, g, scale=1):
    d = dict(f)
    for I, c in g:
        c = A.mul_int(c, scale) if scale != 1 else c
        d[I] = A.add(d[I], c) if I in d else c
    return _pack(A, d)


def form_scale(A, f, q):
    q = Fraction(q)
    if q == 0:
        return ()
    return _pack(A, {I: tuple((e, c * q) for e, c in p) for I, p in f})


def _merge_sign(I: tuple, J: tuple):
    """Sign and sorted union of ``dt_I ^ dt_J``, or None when they overlap."""
    if set(I) & set(J):
        return None
    inversions = sum(1 for i in I for j in J if i > j)
    return (-1 if inversions % 2 else 1), tuple(sorted(I + J))


def form_wedge(A, f, g):
    d: dict = {}
    for I, a in f:
        for J, b in g:
            merged = _merge_sign(I, J)
            if merged is None:
                continue
            sign, K = merged
            term = A.mul(a, b)
            if sign < 0:
                term = A.neg(term)
            d[K] = A.add(d[K], term) if K in d else term
    return _pack(A, d)


def partial(A: Polynomial, p, j: int):
    out = {}
    for e, c in p:
        if e[j]:
            e2 = list(e)
            e2[j] -= 1
            out[tuple(e2)] = c * e[j]
    return A.normalize(out)


def form_d(A, f):
    """Exterior derivative."""
    d: dict = {}
    for I, p in f:
        for j in range(A.nvars):
            if j in I:
                continue
            dp = partial(A, p, j)
            if not dp:
                continue
            before = sum(1 for i in I if i < j)
            K = tuple(sorted(I + (j,)))
            term = A.neg(dp) if before % 2 else dp
            d[K] = A.add(d[K], term) if K in d else term
    return _pack(A, d)


def form_degrees(f) -> set:
    return {len(I) for I, _ in f}


def form_is_integral(f) -> bool:
    return all(c.denominator == 1 for _, p in f for _, c in p)


def form_format(A, f) -> str:
    if not f:
        return "0"
    parts = []
    for I, p in f:
        dt = "^".join(f"d{A.variables[i]}" for i in I)
        coeff = A.format(p)
        parts.append(f"({coeff})" + (f"*{dt}" if dt else ""))
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# Form tuples
# ---------------------------------------------------------------------------


class FormTuple:
    """``(omega_n)_{n in S}`` with forms over ``A``."""

    __slots__ = ("A", "S", "components")

    def __init__(self, A: Polynomial, S: TruncationSet, components):
        if isinstance(components, dict):
            comps = tuple(components.get(n, ()) for n in S)
        else:
            comps = tuple(components)
        if len(comps) != len(S):
            raise MismatchedShape(f"expected {len(S)} components, got {len(comps)}")
        self.A, self.S, self.components = A, S, comps

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, A, S):
        return cls(A, S, [()] * len(S))

    @classmethod
    def scalar(cls, A, S, values):
        """Degree-zero tuple from one polynomial per index."""
        return cls(A, S, [((((), A.normalize(v)),) if A.normalize(v) else ()) for v in values])

    @classmethod
    def teich(cls, A, S, a):
        """``<a>_S = (a^v)_v``."""
        return cls(A, S, [(((), A.pow(a, v)),) if a else () for v in S])

    @classmethod
    def random(cls, A, S, rng: _random.Random, degree: int | None = None, dens: int = 3):
        def coeff():
            return Fraction(rng.randint(-4, 4), rng.randint(1, dens))

        comps = []
        for _ in S:
            r = rng.randint(0, min(2, A.nvars)) if degree is None else degree
            form = {}
            for I in itertools.combinations(range(A.nvars), r):
                if rng.random() < 0.7:
                    poly = {}
                    for _ in range(rng.randint(1, 2)):
                        poly[tuple(rng.randint(0, 2) for _ in range(A.nvars))] = coeff()
                    form[I] = A.normalize(poly)
            comps.append(_pack(A, form))
        return cls(A, S, comps)

    # access -------------------------------------------------------------
    def __getitem__(self, n: int):
        return self.components[self.S.index(n)]

    def items(self):
        return zip(self.S, self.components)

    def __eq__(self, other):
        return (isinstance(other, FormTuple) and self.S == other.S
                and self.A == other.A and self.components == other.components)

    def __hash__(self):
        return hash((self.S, self.components))

    def __repr__(self):
        body = ", ".join(f"{n}: {form_format(self.A, f)}" for n, f in self.items())
        return f"FormTuple({{{body}}})"

    def is_zero(self) -> bool:
        return not any(self.components)

    @property
    def degree(self) -> int | None:
        degs = set().union(*(form_degrees(f) for f in self.components))
        if not degs:
            return 0
        return degs.pop() if len(degs) == 1 else None

    def is_integral(self) -> bool:
        """All coefficients are integers (membership in the integral forms)."""
        return all(form_is_integral(f) for f in self.components)

    # algebra ------------------------------------------------------------
    def _check(self, other):
        if self.S != other.S or self.A != other.A:
            raise MismatchedShape("form tuples over different index sets or rings")

    def __add__(self, other):
        self._check(other)
        A = self.A
        return FormTuple(A, self.S, [form_add(A, f, g) for f, g in zip(self.components, other.components)])

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        self._check(other)
        A = self.A
        return FormTuple(A, self.S, [form_add(A, f, g, -1) for f, g in zip(self.components, other.components)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        A = self.A
        return FormTuple(A, self.S, [form_wedge(A, f, g) for f, g in zip(self.components, other.components)])

    __rmul__ = __mul__

    def scale(self, q):
        return FormTuple(self.A, self.S, [form_scale(self.A, f, q) for f in self.components])

    def weighted(self, weights) -> "FormTuple":
        """Componentwise scaling ``omega_v -> weights(v) * omega_v``."""
        return FormTuple(self.A, self.S, [form_scale(self.A, f, weights(n)) for n, f in self.items()])

    def d_frak(self) -> "FormTuple":
        return d_frak(self)

    def frobenius(self, m: int) -> "FormTuple":
        return form_frobenius(m, self)

    def verschiebung(self, n: int, S: TruncationSet) -> "FormTuple":
        return form_verschiebung(n, self, S)

    def to_json(self) -> dict:
        A = self.A
        return {
            "S": self.S.to_json(),
            "variables": list(A.variables),
            "components": {
                str(n): [{"dt": list(I), "coefficient": A.format(p)} for I, p in f]
                for n, f in self.items()
            },
        }


def d_frak(omega: FormTuple) -> FormTuple:
    """``(d omega_n / n)_n``."""
    A = omega.A
    return FormTuple(A, omega.S, [form_scale(A, form_d(A, f), Fraction(1, n)) for n, f in omega.items()])


def form_frobenius(m: int, omega: FormTuple) -> FormTuple:
    """``F_m(omega)_v = omega_{vm}`` over ``S/m``."""
    if m not in omega.S:
        raise NotAMember(f"{m} is not in {list(omega.S)}")
    T = omega.S.quotient(m)
    return FormTuple(omega.A, T, [omega[v * m] for v in T])


def form_verschiebung(n: int, omega: FormTuple, S: TruncationSet) -> FormTuple:
    """``V_n(omega)_v = n omega_{v/n}`` (zero off multiples of ``n``) over ``S``."""
    if n not in S:
        raise NotAMember(f"{n} is not in {list(S)}")
    if S.quotient(n) != omega.S:
        raise MismatchedShape(f"source index set must be S/{n}")
    A = omega.A
    return FormTuple(A, S, [form_scale(A, omega[v // n], n) if v % n == 0 else () for v in S])


# ---------------------------------------------------------------------------
# Generator words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorWord:
    """``V_n0<a0> dd V_n1<a1> ... dd V_nr<ar>`` with ``a_i`` polynomial payloads."""

    leading: tuple
    letters: tuple = ()

    @property
    def degree(self) -> int:
        return len(self.letters)

    def indices(self) -> list:
        return [self.leading[0]] + [n for n, _ in self.letters]


def V_teich(A, S: TruncationSet, n: int, a) -> FormTuple:
    """``V_n<a>`` = ``(n a^(v/n))`` at multiples of ``n``."""
    if n not in S:
        raise NotAMember(f"{n} is not in {list(S)}")
    return FormTuple(
        A, S, [(((), A.mul_int(A.pow(a, v // n), n)),) if v % n == 0 and a else () for v in S]
    )


def dV_teich(A, S: TruncationSet, n: int, a) -> FormTuple:
    """``dd V_n<a>`` = ``(a^(v/n - 1) da)`` at multiples of ``n``, built directly."""
    if n not in S:
        raise NotAMember(f"{n} is not in {list(S)}")
    da = form_d(A, (((), a),)) if a else ()
    comps = []
    for v in S:
        if v % n or not da:
            comps.append(())
        else:
            comps.append(form_wedge(A, (((), A.pow(a, v // n - 1)),), da))
    return FormTuple(A, S, comps)


def realize_word(A: Polynomial, S: TruncationSet, w: GeneratorWord) -> FormTuple:
    """Componentwise product of ``V_n0<a0>`` and the ``dd V_ni<ai>`` tuples."""
    for n in w.indices():
        if n not in S:
            raise NotAMember(f"{n} is not in {list(S)}")
    out = V_teich(A, S, *w.leading)
    for n, a in w.letters:
        if out.is_zero():
            break
        out = out * dV_teich(A, S, n, a)
    return out


def monomials(A: Polynomial, max_degree: int) -> list:
    out = []
    for e in itertools.product(range(max_degree + 1), repeat=A.nvars):
        if sum(e) <= max_degree:
            out.append(A.monomial(e))
    return out


def random_word(A, S, rng, length: int, max_degree: int = 2, coefficients=(1,)) -> GeneratorWord:
    monos = monomials(A, max_degree)
    members = list(S)

    def pick():
        return A.mul_int(rng.choice(monos), rng.choice(coefficients))

    return GeneratorWord(
        (rng.choice(members), pick()),
        tuple((rng.choice(members), pick()) for _ in range(length)),
    )


# ---------------------------------------------------------------------------
# Presentations and the ghost map on forms
# ---------------------------------------------------------------------------


class Presentation:
    """``R = A / I`` with ``A = Z[t_1..t_d]`` and ``I`` given by generators.

    Forms are reduced modulo the differential graded ideal generated by
    ``I`` (spanned in degree ``r`` by ``g dt_K`` and ``dg ^ dt_K'``).  The
    reduction is a Groebner normal form of the degree-``r`` module, encoded
    with one auxiliary variable per basis form.
    """

    def __init__(self, A: Polynomial, relations: Iterable = ()):
        self.A = A
        self.relations = [A.normalize(g) for g in relations]
        self._bases: dict = {}

    def _basis(self, r: int) -> list:
        return list(itertools.combinations(range(self.A.nvars), r))

    def _symbols(self, r: int):
        ts = sympy.symbols(list(self.A.variables))
        es = sympy.symbols(f"e0:{max(1, len(self._basis(r)))}", seq=True)
        return list(ts), list(es)

    def _to_sympy(self, f, r: int):
        ts, es = self._symbols(r)
        pos = {I: i for i, I in enumerate(self._basis(r))}
        expr = sympy.Integer(0)
        for I, p in f:
            coeff = sum(
                (sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[t**k for t, k in zip(ts, e)])
                 for e, c in p),
                sympy.Integer(0),
            )
            expr += coeff * es[pos[I]]
        return expr

    def _from_sympy(self, expr, r: int):
        ts, es = self._symbols(r)
        basis = self._basis(r)
        out = {}
        poly = sympy.Poly(sympy.expand(expr), *es, *ts)
        for monom, c in poly.terms():
            e_part, t_part = monom[: len(es)], monom[len(es):]
            which = [i for i, k in enumerate(e_part) if k]
            I = basis[which[0]] if which else ()
            term = {tuple(t_part): Fraction(int(c.p), int(c.q))}
            out[I] = self.A.add(out.get(I, ()), self.A.normalize(term))
        return _pack(self.A, out)

    def _groebner(self, r: int):
        if r in self._bases:
            return self._bases[r]
        A = self.A
        ts, es = self._symbols(r)
        gens = []
        for g in self.relations:
            for I in self._basis(r):
                gens.append(self._to_sympy(((I, g),), r))
            if r >= 1:
                dg = form_d(A, (((), g),))
                for K in self._basis(r - 1):
                    gens.append(self._to_sympy(form_wedge(A, dg, ((K, A.one()),)), r))
        gens = [g for g in gens if g != 0]
        if not gens:
            G = None
        else:
            products = [a * b for a, b in itertools.combinations_with_replacement(es, 2)]
            G = sympy.groebner(gens + products, *es, *ts, order="lex", domain="QQ")
        self._bases[r] = (G, es, ts)
        return self._bases[r]

    def reduce_form(self, f):
        """Normal form of ``f`` modulo the dg ideal generated by the relations."""
        if not f or not self.relations:
            return f
        degs = form_degrees(f)
        out = ()
        for r in sorted(degs):
            part = tuple((I, p) for I, p in f if len(I) == r)
            G, es, ts = self._groebner(r)
            if G is None:
                out = form_add(self.A, out, part)
                continue
            _, rem = G.reduce(self._to_sympy(part, r))
            out = form_add(self.A, out, self._from_sympy(rem, r))
        return out

    def reduce(self, omega: FormTuple) -> FormTuple:
        return FormTuple(omega.A, omega.S, [self.reduce_form(f) for f in omega.components])


def ghost_form_map(combination, presentation: Presentation, S: TruncationSet) -> FormTuple:
    """Image of ``sum c_w * w`` (pairs ``(c, word)``) in the forms of ``A/I``, per index."""
    A = presentation.A
    total = FormTuple.zero(A, S)
    for c, w in combination:
        total = total + realize_word(A, S, w).scale(c)
    return presentation.reduce(total)


def check_ghost_differential(omega: FormTuple, presentation: Presentation) -> bool:
    """``d G(omega) = (v)_v * G(dd omega)`` after reduction."""
    A = omega.A
    red = presentation.reduce
    lhs = red(FormTuple(A, omega.S, [form_d(A, f) for f in red(omega).components]))
    rhs = red(d_frak(omega).weighted(lambda v: v))
    return lhs == rhs


def degree_zero_ghost(A: Polynomial, S: TruncationSet, n: int, a) -> FormTuple:
    """Ghost components of ``V_n<a>`` computed by the Witt kernel over ``A``."""
    w = verschiebung(n, teichmuller(a, A, S.quotient(n)), S)
    return FormTuple.scalar(A, S, list(ghost_of(w).coords))


# ---------------------------------------------------------------------------
# Identity suites
# ---------------------------------------------------------------------------


class _Tally:
    def __init__(self):
        self.rows: dict = {}

    def record(self, name: str, ok: bool, detail=None):
        row = self.rows.setdefault(name, {"identity": name, "samples": 0, "failures": 0, "examples": []})
        row["samples"] += 1
        if not ok:
            row["failures"] += 1
            if detail is not None and len(row["examples"]) < 3:
                row["examples"].append(detail)

    def report(self, extra: dict) -> dict:
        rows = []
        for row in self.rows.values():
            row["pass"] = row["failures"] == 0
            if not row["examples"]:
                del row["examples"]
            rows.append(row)
        return {**extra, "identities": rows, "pass": all(r["pass"] for r in rows)}


def bezout(m1: int, n1: int) -> tuple:
    """``(i, j)`` with ``i m1 + j n1 = 1``."""
    g, i, j = egcd(m1, n1)
    if g != 1:
        raise ValueError("arguments are not coprime")
    return i, j


def _words(A, S, rng, count, max_len=3):
    return [random_word(A, S, rng, rng.randint(0, max_len)) for _ in range(count)]


def verify_operator_identities(S: TruncationSet, d: int = 2, samples: int = 3, seed: int = 0,
                   word_samples: int = 60) -> dict:
    """Evaluate the operator identities between ``dd``, ``F``, ``V`` on samples.

    Sample forms over ``S/n`` are random rational tuples together with
    realized words; every pair ``n, m`` in ``S`` is exercised.
    """
    rng = _random.Random(seed)
    A = polynomial_ring(d)
    tally = _Tally()
    members = list(S)
    monos = monomials(A, 2)

    def sample_tuples(T: TruncationSet):
        out = [FormTuple.random(A, T, rng) for _ in range(samples)]
        out.append(realize_word(A, T, random_word(A, T, rng, rng.randint(0, 2))))
        return out

    for n in members:
        Sn = S.quotient(n)
        for w in sample_tuples(Sn):
            # (1) V_n dd = n dd V_n
            tally.record("V_n dd = n dd V_n",
                         form_verschiebung(n, d_frak(w), S) == d_frak(form_verschiebung(n, w, S)).scale(n))
            # (3) F_n dd V_n = dd
            tally.record("F_n dd V_n = dd",
                         form_frobenius(n, d_frak(form_verschiebung(n, w, S))) == d_frak(w))
        for w in sample_tuples(S):
            # (2) m F_m dd = dd F_m
            tally.record("m F_m dd = dd F_m",
                         form_frobenius(n, d_frak(w)).scale(n) == d_frak(form_frobenius(n, w)))
        # (9) V_n(w0 dd w1 ... dd wr) = V_n(w0) dd V_n(w1) ... dd V_n(wr)
        for r in range(3):
            ws = [FormTuple.random(A, Sn, rng) for _ in range(r + 1)]
            lhs = ws[0]
            for x in ws[1:]:
                lhs = lhs * d_frak(x)
            lhs = form_verschiebung(n, lhs, S)
            rhs = form_verschiebung(n, ws[0], S)
            for x in ws[1:]:
                rhs = rhs * d_frak(form_verschiebung(n, x, S))
            tally.record("V_n(w0 dd w1 ...) = V_n(w0) dd V_n(w1) ...", lhs == rhs)
        # (7) F_n dd <a>_S = <a^(n-1)>_{S/n} dd <a>_{S/n}
        for a in rng.sample(monos, min(3, len(monos))):
            a = A.mul_int(a, rng.choice([1, -2, 3]))
            lhs = form_frobenius(n, d_frak(FormTuple.teich(A, S, a)))
            rhs = FormTuple.teich(A, Sn, A.pow(a, n - 1)) * d_frak(FormTuple.teich(A, Sn, a))
            tally.record("F_n dd<a> = <a^(n-1)> dd<a>", lhs == rhs)

    for n, m in itertools.product(members, repeat=2):
        g = math.gcd(n, m)
        n1, m1 = n // g, m // g
        i, j = bezout(m1, n1)
        Sn, Sm = S.quotient(n), S.quotient(m)
        if n * m1 not in S:
            # the right-hand sides live over an empty index set
            for w in sample_tuples(Sn):
                tally.record("F_m dd V_n = 0 when lcm(n,m) is not in S",
                             form_frobenius(m, d_frak(form_verschiebung(n, w, S))).is_zero())
            continue
        for w in sample_tuples(Sn):
            FdV = form_frobenius(m, d_frak(form_verschiebung(n, w, S)))
            dVF = d_frak(form_verschiebung(n1, form_frobenius(m1, w), Sm))
            VFd = form_verschiebung(n1, form_frobenius(m1, d_frak(w)), Sm)
            tally.record("m' F_m dd V_n = dd V_n' F_m'", FdV.scale(m1) == dVF)
            tally.record("n' F_m dd V_n = V_n' F_m' dd", FdV.scale(n1) == VFd)
            tally.record("F_m dd V_n = i dd V_n' F_m' + j V_n' F_m' dd",
                         FdV == dVF.scale(i) + VFd.scale(j))
        # (8) on <a>
        a = A.mul_int(rng.choice(monos), rng.choice([1, 2, -1]))
        lhs = form_frobenius(m, dV_teich(A, S, n, a))
        T1 = Sm.quotient(n1)
        rhs = (dV_teich(A, Sm, n1, A.pow(a, m1)).scale(i)
               + form_verschiebung(n1, FormTuple.teich(A, T1, A.pow(a, m1 - 1))
                                   * d_frak(FormTuple.teich(A, T1, a)), Sm).scale(j))
        tally.record("F_m dd V_n<a> = i dd V_n'<a^m'> + j V_n'(<a^(m'-1)> dd<a>)", lhs == rhs)

    _operator_relations(A, S, rng, samples, tally)
    _word_properties(A, S, rng, word_samples, tally)
    return tally.report({"S": S.to_json(), "variables": list(A.variables), "samples": samples, "seed": seed})


def _operator_relations(A, S, rng, samples, tally) -> None:
    """Relations between F and V (composition, projection formula, F_m V_n)."""
    members = list(S)
    for n, m in itertools.product(members, repeat=2):
        Sn, Sm = S.quotient(n), S.quotient(m)
        if n * m in S:
            Snm = S.quotient(n * m)
            for _ in range(samples):
                a = FormTuple.random(A, S, rng)
                tally.record("F_n F_m = F_nm", form_frobenius(n, form_frobenius(m, a)) == form_frobenius(n * m, a))
                b = FormTuple.random(A, Snm, rng)
                tally.record("V_n V_m = V_nm",
                             form_verschiebung(n, form_verschiebung(m, b, Sn), S) == form_verschiebung(n * m, b, S))
        g = math.gcd(n, m)
        n1, m1 = n // g, m // g
        for _ in range(samples):
            b = FormTuple.random(A, Sn, rng)
            lhs = form_frobenius(m, form_verschiebung(n, b, S))
            if n * m1 not in S:
                tally.record("F_m V_n = 0 when lcm(n,m) is not in S", lhs.is_zero())
                continue
            rhs = form_verschiebung(n1, form_frobenius(m1, b), Sm).scale(g)
            tally.record("F_m V_n = (n,m) V_n' F_m'", lhs == rhs)
    for n in members:
        Sn = S.quotient(n)
        for _ in range(samples):
            a = FormTuple.random(A, S, rng)
            b = FormTuple.random(A, Sn, rng)
            tally.record("V_n(F_n(a) b) = a V_n(b)",
                         form_verschiebung(n, form_frobenius(n, a) * b, S) == a * form_verschiebung(n, b, S))
            tally.record("V_n(b F_n(a)) = V_n(b) a",
                         form_verschiebung(n, b * form_frobenius(n, a), S) == form_verschiebung(n, b, S) * a)
            tally.record("F_n V_n = n", form_frobenius(n, form_verschiebung(n, b, S)) == b.scale(n))
            for T in (t for t in _sub_truncations(S) if n in t):
                lhs = restrict(form_verschiebung(n, b, S), T)
                rhs = form_verschiebung(n, restrict(b, T.quotient(n)), T)
                tally.record("V_n commutes with restriction", lhs == rhs)
                tally.record("F_n commutes with restriction",
                             restrict(form_frobenius(n, a), T.quotient(n)) == form_frobenius(n, restrict(a, T)))


def _sub_truncations(S: TruncationSet) -> list:
    return [S.quotient(n) for n in S if n > 1] + [TruncationSet([1])]


def restrict(omega: FormTuple, T: TruncationSet) -> FormTuple:
    if not T <= omega.S:
        raise MismatchedShape(f"{list(T)} is not contained in {list(omega.S)}")
    return FormTuple(omega.A, T, [omega[v] for v in T])


def _word_properties(A, S, rng, count, tally) -> None:
    """Integrality of words and their Frobenius images, dd^2 = 0, Leibniz, vanishing above d."""
    words = _words(A, S, rng, count)
    for w in words:
        omega = realize_word(A, S, w)
        tally.record("word realization is integral", omega.is_integral())
        for m in S:
            tally.record("F_m of a word is integral", form_frobenius(m, omega).is_integral())
        tally.record("dd dd = 0", d_frak(d_frak(omega)).is_zero())
        if w.degree > A.nvars:
            tally.record("words above the number of variables vanish", omega.is_zero())
        other = realize_word(A, S, random_word(A, S, rng, rng.randint(0, 1)))
        r = omega.degree or 0
        lhs = d_frak(omega * other)
        rhs = d_frak(omega) * other + (omega * d_frak(other)).scale((-1) ** r)
        tally.record("graded Leibniz rule", lhs == rhs)
    for w in words[: max(1, count // 4)]:
        for n in S:
            if n == 1:
                continue
            shifted = form_verschiebung(n, realize_word(A, S.quotient(n), w_restricted(w, S.quotient(n))), S)
            tally.record("V_n of a word is integral", shifted.is_integral())


def w_restricted(w: GeneratorWord, T: TruncationSet) -> GeneratorWord:
    """Replace indices outside ``T`` by 1 so the word lives over ``T``."""
    fix = (lambda n: n if n in T else 1)
    return GeneratorWord((fix(w.leading[0]), w.leading[1]), tuple((fix(n), a) for n, a in w.letters))


def vanishing_above_dimension(A: Polynomial, S: TruncationSet, rng, count: int = 50) -> bool:
    """Every realized word with more than ``d`` letters is zero."""
    for _ in range(count):
        w = random_word(A, S, rng, A.nvars + 1 + rng.randint(0, 1))
        if not realize_word(A, S, w).is_zero():
            return False
    return True


def span_lattice(tuples: Sequence[FormTuple]):
    """Integer lattice spanned by integral tuples in coordinates (index, dt, monomial)."""
    keys = sorted({(n, I, e) for t in tuples for n, f in t.items() for I, p in f for e, _ in p})
    pos = {k: i for i, k in enumerate(keys)}
    rows = []
    for t in tuples:
        if not t.is_integral():
            raise ValueError("span contains a non-integral tuple")
        row = [0] * len(keys)
        for n, f in t.items():
            for I, p in f:
                for e, c in p:
                    row[pos[(n, I, e)]] = int(c)
        rows.append(row)
    return hnf_span(rows, len(keys)), rows
