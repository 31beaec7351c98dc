import random

import pytest
from hypothesis import given, strategies as st

from wittlab.errors import ExprTypeError, ParseError
from wittlab.expr import Add, Checker, Teich, Ver, evaluate, parse, random_expression, to_text
from wittlab.rings import ZZ, IntegersLocalized, Polynomial, PrimeField
from wittlab.truncation import TruncationSet
from wittlab.witt import GhostVector, WittVector

S = TruncationSet([1, 2, 4])
ZR = Polynomial(ZZ, ["r"])


def test_parse_tree():
    assert parse("teich(3) + V(2, teich(5))") == Add(Teich("3"), Ver(2, Teich("5")))


def test_precedence_and_associativity():
    assert parse("1 + 2 * 3") == parse("1 + (2 * 3)")
    assert parse("1 + 2 + 3") == parse("(1 + 2) + 3")
    assert parse("-1 * 2") == parse("(-1) * 2")


def test_index_not_in_set():
    with pytest.raises(ExprTypeError, match="7"):
        Checker(ZR, S).check(parse("V(7, teich(1))"))


def test_frobenius_shrinks_the_set():
    T, kind = Checker(ZR, S).check(parse("F(2, teich(r))*teich(r)"))
    assert list(T) == [1, 2] and kind == "witt"
    value = evaluate("F(2, teich(r))*teich(r)", ZR, S)
    assert value == WittVector(ZR, TruncationSet([1, 2]), [ZR.parse("r^3"), ZR.zero()])


def test_ghost_and_fromghost():
    g = evaluate("ghost(teich(3) + V(2, teich(5)))", ZZ, S)
    assert isinstance(g, GhostVector) and list(g.coords) == [3, 19, 131]
    assert list(evaluate("fromghost(3, 11, 91)", ZZ, S).coords) == [3, 1, 2]
    assert list(evaluate("-V(2, 1) * 3", ZZ, S).coords) == [0, -3, -6]


def test_integer_literals_are_multiples_of_one():
    assert evaluate("2", PrimeField(2), S) == WittVector(PrimeField(2), S, [0, 1, 0])


def test_idempotent_and_delta():
    e = evaluate("ah_idempotent(1)", IntegersLocalized([2]), TruncationSet([1, 2]))
    assert e.ring.format(e[2]) == "-1/2"
    assert list(evaluate("delta(2, V(2, 1))", ZZ, TruncationSet([1, 2])).coords) == [1]


@pytest.mark.parametrize("text,column", [("teich(3) +", 11), ("foo(1)", 1), ("V(2 teich(1))", 5)])
def test_syntax_errors_carry_positions(text, column):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert f"line 1, column {column}" in str(info.value)


def test_ghost_values_cannot_be_multiplied_by_witt_values():
    with pytest.raises(ExprTypeError):
        evaluate("ghost(1) * teich(2)", ZZ, S)


def test_round_trip_corpus():
    rng = random.Random(12)
    for _ in range(1000):
        e = random_expression(rng, depth=4)
        assert parse(to_text(e)) == e


@given(st.randoms(use_true_random=False))
def test_printing_is_stable(rnd):
    e = random_expression(rnd, depth=3)
    text = to_text(e)
    assert to_text(parse(text)) == text
