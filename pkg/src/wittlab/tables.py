"""Universal Witt polynomials and their on-disk cache.

The coordinate polynomials for addition, multiplication, negation and the
Frobenius operators are obtained by solving the ghost equations over
``Z[X; Y]`` one index at a time, in order of increasing number of prime
factors.  For an index ``s`` the polynomial only involves variables indexed by
divisors of ``s`` (or of ``s*n`` for ``F_n``), so every polynomial is memoized
per index and shared by all truncation sets containing it.

Polynomials are ``dict`` objects mapping a monomial to an integer coefficient.
A monomial is a sorted tuple of ``((tag, index), exponent)`` pairs with tag 0
for ``X`` and 1 for ``Y``.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from dataclasses import dataclass, field
from pathlib import Path

from .errors import IntegralityViolation
from .numtheory import divisors
from .truncation import TruncationSet

X, Y = 0, 1

# ---------------------------------------------------------------------------
# Integer polynomial arithmetic on monomial dictionaries
# ---------------------------------------------------------------------------


def _mono_mul(m1: tuple, m2: tuple) -> tuple:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def padd(a: dict, b: dict, scale: int = 1) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = _mono_mul(m1, m2)
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def ppow(a: dict, e: int) -> dict:
    result = {(): 1}
    base = a
    while e:
        if e & 1:
            result = pmul(result, base)
        e >>= 1
        if e:
            base = pmul(base, base)
    return result


def pvar(tag: int, n: int, e: int = 1) -> dict:
    return {(((tag, n), e),): 1}


def ghost_poly(tag: int, s: int) -> dict:
    """``w_s = sum_{d | s} d * V_d^(s/d)`` in the variables of the given tag."""
    return {(((tag, d), s // d),): d for d in divisors(s)}


def pvariables(a: dict) -> set:
    return {v for m in a for v, _ in m}


def pformat(a: dict) -> str:
    """Human-readable form such as ``X2+Y2-X1*Y1``."""
    if not a:
        return "0"

    def key(item):
        m, _ = item
        return (sum(e for _, e in m), [(t, n, -e) for (t, n), e in m])

    parts = []
    for m, c in sorted(a.items(), key=key):
        mono = "*".join(
            f"{'XY'[t]}{n}" + (f"^{e}" if e > 1 else "") for (t, n), e in m
        )
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return "+".join(parts).replace("+-", "-")


# ---------------------------------------------------------------------------
# Ghost-equation solver
# ---------------------------------------------------------------------------


class _Family:
    """Solutions ``R_s`` of ``sum_{d | s} d R_d^(s/d) = target(s)``."""

    def __init__(self, name: str, target):
        self.name = name
        self.target = target
        self.solved: dict = {}
        self.powers: dict = {}
        self.lock = threading.RLock()

    def _power(self, d: int, e: int) -> dict:
        key = (d, e)
        if key not in self.powers:
            self.powers[key] = ppow(self.get(d), e)
        return self.powers[key]

    def get(self, s: int) -> dict:
        found = self.solved.get(s)
        if found is not None:
            return found
        with self.lock:
            if s in self.solved:
                return self.solved[s]
            rest = dict(self.target(s))
            for d in divisors(s)[:-1]:
                rest = padd(rest, self._power(d, s // d), -d)
            poly = {}
            for m, c in rest.items():
                q, r = divmod(c, s)
                if r:
                    raise IntegralityViolation(
                        f"{self.name} polynomial at index {s}: coefficient {c} not divisible by {s}"
                    )
                poly[m] = q
            self.solved[s] = poly
            return poly


_ADD = _Family("addition", lambda s: padd(ghost_poly(X, s), ghost_poly(Y, s)))
_MUL = _Family("multiplication", lambda s: pmul(ghost_poly(X, s), ghost_poly(Y, s)))
_NEG = _Family("negation", lambda s: {m: -c for m, c in ghost_poly(X, s).items()})
_FROB: dict = {}
_FROB_LOCK = threading.Lock()


def add_poly(s: int) -> dict:
    return _ADD.get(s)


def mul_poly(s: int) -> dict:
    return _MUL.get(s)


def neg_poly(s: int) -> dict:
    return _NEG.get(s)


def frob_poly(n: int, s: int) -> dict:
    """Coordinate ``s`` of ``F_n`` as a polynomial in the ``X_m``, ``m | sn``."""
    fam = _FROB.get(n)
    if fam is None:
        with _FROB_LOCK:
            fam = _FROB.setdefault(
                n, _Family(f"Frobenius F_{n}", lambda s, n=n: ghost_poly(X, s * n))
            )
    return fam.get(s)


# ---------------------------------------------------------------------------
# Tables per truncation set
# ---------------------------------------------------------------------------


@dataclass
class UniversalTables:
    """Coordinate polynomials of the Witt ring structure on ``W_S``."""

    S: TruncationSet
    add: dict = field(default_factory=dict)
    mul: dict = field(default_factory=dict)
    neg: dict = field(default_factory=dict)
    frob: dict = field(default_factory=dict)

    def variables(self) -> list:
        return [(X, n) for n in self.S] + [(Y, n) for n in self.S]

    def variable_names(self) -> list:
        return [f"{'XY'[t]}{n}" for t, n in self.variables()]

    def _encode(self, poly: dict) -> dict:
        pos = {v: i for i, v in enumerate(self.variables())}
        out = {}
        for m, c in sorted(poly.items()):
            vec = [0] * len(pos)
            for v, e in m:
                vec[pos[v]] = e
            out[",".join(map(str, vec))] = c
        return out

    def _decode(self, data: dict) -> dict:
        names = self.variables()
        poly = {}
        for key, c in data.items():
            vec = [int(x) for x in key.split(",")]
            poly[tuple((names[i], e) for i, e in enumerate(vec) if e)] = int(c)
        return poly

    def to_json(self) -> dict:
        return {
            "S": self.S.to_json(),
            "variables": self.variable_names(),
            "add": {str(s): self._encode(p) for s, p in self.add.items()},
            "mul": {str(s): self._encode(p) for s, p in self.mul.items()},
            "neg": {str(s): self._encode(p) for s, p in self.neg.items()},
            "frob": {f"{n}:{s}": self._encode(p) for (n, s), p in self.frob.items()},
        }

    @classmethod
    def from_json(cls, data: dict) -> "UniversalTables":
        t = cls(TruncationSet(data["S"]))
        t.add = {int(s): t._decode(p) for s, p in data["add"].items()}
        t.mul = {int(s): t._decode(p) for s, p in data["mul"].items()}
        t.neg = {int(s): t._decode(p) for s, p in data["neg"].items()}
        t.frob = {
            tuple(int(x) for x in k.split(":")): t._decode(p) for k, p in data["frob"].items()
        }
        return t

    def pretty(self) -> dict:
        return {
            "S": self.S.to_json(),
            "add": {str(s): pformat(p) for s, p in self.add.items()},
            "mul": {str(s): pformat(p) for s, p in self.mul.items()},
            "neg": {str(s): pformat(p) for s, p in self.neg.items()},
            "frob": {f"{n}:{s}": pformat(p) for (n, s), p in self.frob.items()},
        }


def cache_dir() -> Path:
    env = os.environ.get("WITTLAB_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "wittlab"


def cache_path(S: TruncationSet) -> Path:
    return cache_dir() / f"tables_{'-'.join(map(str, S))}.json"


def _compute(S: TruncationSet) -> UniversalTables:
    t = UniversalTables(S)
    for s in S.divisor_order:
        t.add[s] = add_poly(s)
        t.mul[s] = mul_poly(s)
        t.neg[s] = neg_poly(s)
    for n in S:
        for s in S.quotient(n).divisor_order:
            t.frob[(n, s)] = frob_poly(n, s)
    return t


_TABLES: dict = {}
_TABLES_LOCK = threading.Lock()


def build_universal_tables(S: TruncationSet, use_cache: bool = True) -> UniversalTables:
    """Universal tables for ``S``, memoized in memory and optionally on disk.

    The disk cache is append only: a table file is written to a temporary
    name and atomically renamed, so readers never observe a partial file.
    """
    path = cache_path(S) if use_cache else None
    found = _TABLES.get(S)
    if found is not None:
        if path is not None and not path.exists():
            _publish(path, found.to_json())
        return found
    tables = None
    if path is not None and path.exists():
        try:
            with open(path) as fh:
                data = json.load(fh)
            if data.get("S") == S.to_json():
                tables = UniversalTables.from_json(data)
        except (OSError, ValueError, KeyError):
            tables = None
    if tables is None:
        tables = _compute(S)
        if path is not None:
            _publish(path, tables.to_json())
    with _TABLES_LOCK:
        return _TABLES.setdefault(S, tables)


def _publish(path: Path, data: dict) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tables-", suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(data, fh, separators=(",", ":"))
        os.replace(tmp, path)
    except OSError:
        # A read-only cache location only costs recomputation.
        pass


def check_ghost_identities(t: UniversalTables) -> list:
    """Symbolically verify the defining ghost identities; returns failures."""
    failures = []

    def w(family: dict, s: int) -> dict:
        out: dict = {}
        for d in divisors(s):
            out = padd(out, ppow(family[d], s // d), d)
        return out

    for s in t.S:
        if w(t.add, s) != padd(ghost_poly(X, s), ghost_poly(Y, s)):
            failures.append(("add", s))
        if w(t.mul, s) != pmul(ghost_poly(X, s), ghost_poly(Y, s)):
            failures.append(("mul", s))
        if w(t.neg, s) != {m: -c for m, c in ghost_poly(X, s).items()}:
            failures.append(("neg", s))
        for d in divisors(s):
            if any(v[1] not in divisors(s) for v in pvariables(t.add[d]) | pvariables(t.mul[d])):
                failures.append(("support", s))
    for n in t.S:
        fam = {s: t.frob[(n, s)] for s in t.S.quotient(n)}
        for s in t.S.quotient(n):
            if w(fam, s) != ghost_poly(X, s * n):
                failures.append(("frob", n, s))
    return failures
