"""A small expression language for Witt vector computations.

Grammar (``*`` binds tighter than ``+``, both left associative)::

    expr  := sum
    sum   := prod ('+' prod)*
    prod  := term ('*' term)*
    term  := 'teich(' RING-TEXT ')' | 'V(' INT ',' expr ')' | 'F(' INT ',' expr ')'
           | 'delta(' INT ',' expr ')' | 'ghost(' expr ')'
           | 'fromghost(' RING-TEXT (',' RING-TEXT)* ')' | 'ah_idempotent(' INT (',' INT)* ')'
           | '-' term | '(' expr ')' | INT

An integer literal ``n`` denotes ``n`` times the unit Witt vector.  Ring text
is handed to the ring's own parser, so ``teich([1,0])`` or ``teich(x^2+1)``
work for the corresponding rings.

Index sets are inferred: leaves adapt to their context, ``F_n`` and
``delta_p`` shrink the set to ``S/n``, and ``V_n`` needs its argument over
``S/n``.  A whole expression without a forced set lives over the declared
``S``.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass

from .errors import ExprTypeError, MismatchedShape, NotAMember, ParseError
from .rings import Ring
from .truncation import TruncationSet
from .witt import (
    GhostVector,
    WittVector,
    artin_hasse_idempotent,
    delta_p,
    ghost_of,
    teichmuller,
    witt_from_ghost,
)

# ---------------------------------------------------------------------------
# Syntax tree
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Teich:
    text: str


@dataclass(frozen=True)
class Ver:
    n: int
    arg: object


@dataclass(frozen=True)
class Frob:
    n: int
    arg: object


@dataclass(frozen=True)
class Delta:
    p: int
    arg: object


@dataclass(frozen=True)
class Ghost:
    arg: object


@dataclass(frozen=True)
class FromGhost:
    entries: tuple


@dataclass(frozen=True)
class Idempotent:
    T: tuple


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_UNARY = {"V": Ver, "F": Frob, "delta": Delta}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str, pos: int | None = None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return ParseError(f"{msg} at line {line}, column {col}")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.error(f"expected {ch!r}, found {found}")
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def word(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start:self.pos]

    def raw_args(self) -> list:
        """Comma separated raw text up to the matching ')' (brackets nest)."""
        depth, start, parts = 0, self.pos, []
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in "([":
                depth += 1
            elif ch in ")]":
                if depth == 0 and ch == ")":
                    parts.append(self.text[start:self.pos].strip())
                    self.pos += 1
                    if any(not p for p in parts):
                        raise self.error("empty argument")
                    return parts
                depth -= 1
            elif ch == "," and depth == 0:
                parts.append(self.text[start:self.pos].strip())
                start = self.pos + 1
            self.pos += 1
        raise self.error("unterminated argument list")

    def parse(self):
        node = self.sum()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return node

    def sum(self):
        node = self.prod()
        while self.peek() == "+":
            self.pos += 1
            node = Add(node, self.prod())
        return node

    def prod(self):
        node = self.term()
        while self.peek() == "*":
            self.pos += 1
            node = Mul(node, self.term())
        return node

    def term(self):
        ch = self.peek()
        if not ch:
            raise self.error("unexpected end of input")
        if ch == "-":
            self.pos += 1
            return Neg(self.term())
        if ch == "(":
            self.pos += 1
            node = self.sum()
            self.expect(")")
            return node
        if ch.isdigit():
            return Lit(self.integer())
        start = self.pos
        name = self.word()
        if not name:
            raise self.error(f"unexpected {ch!r}")
        self.expect("(")
        if name in _UNARY:
            n = self.integer()
            self.expect(",")
            arg = self.sum()
            self.expect(")")
            return _UNARY[name](n, arg)
        if name == "ghost":
            arg = self.sum()
            self.expect(")")
            return Ghost(arg)
        if name == "teich":
            args = self.raw_args()
            if len(args) != 1:
                raise self.error("teich takes one ring element", start)
            return Teich(args[0])
        if name == "fromghost":
            return FromGhost(tuple(self.raw_args()))
        if name == "ah_idempotent":
            args = self.raw_args()
            try:
                return Idempotent(tuple(int(a) for a in args))
            except ValueError:
                raise self.error("ah_idempotent takes integers", start) from None
        raise self.error(f"unknown function {name!r}", start)


def parse(text: str):
    """Parse expression text into a syntax tree."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Printer
# ---------------------------------------------------------------------------


def to_text(node) -> str:
    """Canonical text; ``parse(to_text(e)) == e``."""
    if isinstance(node, Lit):
        return str(node.value)
    if isinstance(node, Teich):
        return f"teich({node.text})"
    if isinstance(node, Ver):
        return f"V({node.n}, {to_text(node.arg)})"
    if isinstance(node, Frob):
        return f"F({node.n}, {to_text(node.arg)})"
    if isinstance(node, Delta):
        return f"delta({node.p}, {to_text(node.arg)})"
    if isinstance(node, Ghost):
        return f"ghost({to_text(node.arg)})"
    if isinstance(node, FromGhost):
        return f"fromghost({', '.join(node.entries)})"
    if isinstance(node, Idempotent):
        return f"ah_idempotent({', '.join(map(str, node.T))})"
    if isinstance(node, Neg):
        inner = to_text(node.arg)
        return f"-({inner})" if isinstance(node.arg, (Add, Mul)) else f"-{inner}"
    if isinstance(node, Add):
        right = to_text(node.right)
        return f"{to_text(node.left)} + " + (f"({right})" if isinstance(node.right, Add) else right)
    if isinstance(node, Mul):
        def side(x, wrap):
            t = to_text(x)
            return f"({t})" if isinstance(x, wrap) else t

        return f"{side(node.left, Add)} * {side(node.right, (Add, Mul))}"
    raise TypeError(f"not an expression node: {node!r}")


def random_expression(rng: _random.Random, depth: int = 3, elements=("0", "1", "2", "3")):
    """Random syntax tree for round-trip testing."""
    if depth <= 0 or rng.random() < 0.25:
        choice = rng.randrange(3)
        if choice == 0:
            return Lit(rng.randint(0, 20))
        if choice == 1:
            return Teich(rng.choice(elements))
        return Idempotent((1,))
    kind = rng.randrange(8)
    sub = lambda: random_expression(rng, depth - 1, elements)  # noqa: E731
    if kind == 0:
        return Add(sub(), sub())
    if kind == 1:
        return Mul(sub(), sub())
    if kind == 2:
        return Neg(sub())
    if kind == 3:
        return Ver(rng.randint(1, 4), sub())
    if kind == 4:
        return Frob(rng.randint(1, 4), sub())
    if kind == 5:
        return Delta(rng.choice([2, 3]), sub())
    if kind == 6:
        return Ghost(sub())
    return FromGhost(tuple(rng.choice(elements) for _ in range(rng.randint(1, 3))))


# ---------------------------------------------------------------------------
# Type inference and evaluation
# ---------------------------------------------------------------------------


def _lift_set(U: TruncationSet, n: int, S: TruncationSet) -> TruncationSet:
    """A set ``T`` with ``T/n == U``: the declared set when it fits, else the closure of ``nU``."""
    if n in S and S.quotient(n) == U:
        return S
    T = TruncationSet.generated_by([n * u for u in U])
    if T.quotient(n) != U:
        raise ExprTypeError(f"no index set T with T/{n} = {list(U)}")
    return T


class Checker:
    """Infers index sets and value kinds ("witt" or "ghost") for a declared ``S``."""

    def __init__(self, ring: Ring, S: TruncationSet):
        self.ring, self.S = ring, S

    def infer(self, node):
        """``(set or None, kind)``; ``None`` means the set is fixed by context."""
        if isinstance(node, (Lit, Teich, Idempotent)):
            return None, "witt"
        if isinstance(node, FromGhost):
            return None, "witt"
        if isinstance(node, (Frob, Delta)):
            n = node.n if isinstance(node, Frob) else node.p
            U, kind = self.infer(node.arg)
            if isinstance(node, Delta) and kind != "witt":
                raise ExprTypeError("delta needs a Witt vector")
            U = U or self.S
            if n not in U:
                raise ExprTypeError(f"{n} is not in {list(U)}")
            return U.quotient(n), kind
        if isinstance(node, Ver):
            U, kind = self.infer(node.arg)
            return (None if U is None else _lift_set(U, node.n, self.S)), kind
        if isinstance(node, Ghost):
            U, kind = self.infer(node.arg)
            if kind != "witt":
                raise ExprTypeError("ghost needs a Witt vector")
            return U, "ghost"
        if isinstance(node, Neg):
            return self.infer(node.arg)
        if isinstance(node, (Add, Mul)):
            (U1, k1), (U2, k2) = self.infer(node.left), self.infer(node.right)
            if k1 != k2:
                raise ExprTypeError("cannot combine a Witt vector with a ghost vector")
            if U1 is not None and U2 is not None and U1 != U2:
                raise ExprTypeError(f"operands live over {list(U1)} and {list(U2)}")
            return (U1 if U1 is not None else U2), k1
        raise ExprTypeError(f"unknown node {node!r}")

    def check(self, node):
        """Index set and kind of the whole expression; raises ExprTypeError."""
        U, kind = self.infer(node)
        T = U or self.S
        self._check_at(node, T)
        return T, kind

    def _check_at(self, node, T):
        if isinstance(node, Teich):
            self._element(node.text)
        elif isinstance(node, FromGhost):
            if len(node.entries) != len(T):
                raise ExprTypeError(f"fromghost needs {len(T)} entries for {list(T)}")
            for e in node.entries:
                self._element(e)
        elif isinstance(node, Idempotent):
            sub = node.T
            if not set(sub) <= set(T):
                raise ExprTypeError(f"{list(sub)} is not contained in {list(T)}")
        elif isinstance(node, Ver):
            if node.n not in T:
                raise ExprTypeError(f"{node.n} is not in {list(T)}")
            U, _ = self.infer(node.arg)
            if U is not None and U != T.quotient(node.n):
                raise ExprTypeError(f"argument of V({node.n}, ...) must live over {list(T.quotient(node.n))}")
            self._check_at(node.arg, T.quotient(node.n))
        elif isinstance(node, (Frob, Delta)):
            U, _ = self.infer(node.arg)
            self._check_at(node.arg, U or self.S)
        elif isinstance(node, (Ghost, Neg)):
            self._check_at(node.arg, T)
        elif isinstance(node, (Add, Mul)):
            self._check_at(node.left, T)
            self._check_at(node.right, T)

    def _element(self, text: str):
        try:
            return self.ring.parse(text)
        except Exception:  # ring parsers raise assorted errors
            raise ExprTypeError(f"{text!r} is not an element of {self.ring.name}") from None

    # evaluation --------------------------------------------------------
    def evaluate(self, node):
        T, _ = self.check(node)
        return self._eval(node, T)

    def _eval(self, node, T):
        R = self.ring
        if isinstance(node, Lit):
            return WittVector.from_int(node.value, R, T)
        if isinstance(node, Teich):
            return teichmuller(self._element(node.text), R, T)
        if isinstance(node, FromGhost):
            return witt_from_ghost(GhostVector(R, T, [self._element(e) for e in node.entries]))
        if isinstance(node, Idempotent):
            return artin_hasse_idempotent(T, TruncationSet(node.T), R)
        if isinstance(node, Ver):
            return self._eval(node.arg, T.quotient(node.n)).verschiebung(node.n, T)
        if isinstance(node, Frob):
            U, _ = self.infer(node.arg)
            return self._eval(node.arg, U or self.S).frobenius(node.n)
        if isinstance(node, Delta):
            U, _ = self.infer(node.arg)
            return delta_p(node.p, self._eval(node.arg, U or self.S))
        if isinstance(node, Ghost):
            return ghost_of(self._eval(node.arg, T))
        if isinstance(node, Neg):
            return -self._eval(node.arg, T)
        if isinstance(node, Add):
            return self._eval(node.left, T) + self._eval(node.right, T)
        if isinstance(node, Mul):
            return self._eval(node.left, T) * self._eval(node.right, T)
        raise ExprTypeError(f"unknown node {node!r}")


def evaluate(text: str, ring: Ring, S: TruncationSet):
    """Parse, type-check and evaluate; returns a Witt or ghost vector."""
    try:
        return Checker(ring, S).evaluate(parse(text))
    except (NotAMember, MismatchedShape) as exc:
        raise ExprTypeError(str(exc)) from None
