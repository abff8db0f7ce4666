import random

import pytest

from seqprop.boolean import And, AtomB, FalseB, Not, Or, TrueB, VarB
from seqprop.errors import AlphabetError, ParseError
from seqprop.syntax import (format_history, parse_ba, parse_history, parse_term, parse_valuation,
                            print_ba, print_term, print_valuation)
from seqprop.terms import Atom, Cond, F, T, Var, leaf_pool, negate, random_term
from seqprop.valuations import SemVariety, Special, random_valuation
from seqprop.terms import Alphabet

a, b = Atom("a"), Atom("b")


def test_core_grammar():
    assert parse_term("T <| a |> F") == Cond(T, a, F)
    assert parse_term("X") == Var("X")
    assert parse_term("  ((a))  ") == a
    assert parse_term("(a <| b |> T) <| F |> X") == Cond(Cond(a, b, T), F, Var("X"))


def test_sugar_desugars():
    assert parse_term("~a") == parse_term("F <| a |> T")
    assert parse_term("a ; T") == parse_term("T <| a |> T")
    assert parse_term("a &> b") == parse_term("b <| a |> F")
    assert parse_term("a <& b") == parse_term("a <| b |> F")
    assert parse_term("a or> b") == parse_term("T <| a |> b")
    assert parse_term("a <or b") == parse_term("T <| b |> a")
    assert parse_term("a -> b") == parse_term("b <| a |> T")
    assert parse_term("a <- b") == parse_term("T <| b |> (F <| a |> T)")
    assert parse_term("a <-> b") == parse_term("b <| a |> (F <| b |> T)")
    assert parse_term("a >-< b") == parse_term("a <| b |> (F <| a |> T)")


def test_sugar_precedence_and_associativity():
    assert parse_term("a ; b ; T") == parse_term("(a ; b) ; T")
    assert parse_term("~a &> b or> T") == parse_term("((~a) &> b) or> T")
    assert parse_term("a &> b <| T |> F") == parse_term("(a &> b) <| T |> F")
    assert parse_term("a or> b or> T") == parse_term("(a or> b) or> T")


def test_atom_named_like_an_operator_prefix():
    assert parse_term("T <| order |> F") == Cond(T, Atom("order"), F)


@pytest.mark.parametrize("text", [
    "a <| b |> c <| d |> e",
    "a <| b <| c |> d |> e",
    "a -> b -> c",
    "a <| b",
    "(a",
    "a )",
    "",
    "a $ b",
])
def test_malformed_terms_raise_with_span(text):
    with pytest.raises(ParseError) as info:
        parse_term(text)
    span = info.value.span
    assert 0 <= span.start <= span.end <= len(text)


def test_nested_conditional_error_points_at_second_operator():
    with pytest.raises(ParseError) as info:
        parse_term("a <| b |> c <| d |> e")
    assert info.value.span.start == 12
    assert "non-associative" in str(info.value)


def test_alphabet_restriction():
    assert parse_term("a <| b |> a", ["a", "b"]) == Cond(a, b, a)
    with pytest.raises(AlphabetError):
        parse_term("a <| c |> a", ["a", "b"])


def test_printer_examples():
    assert print_term(Cond(T, a, F)) == "T <| a |> F"
    assert print_term(negate(a)) == "F <| a |> T"
    assert print_term(parse_term("(a <| b |> c) <| d |> (T <| a |> F)")) == \
        "(a <| b |> c) <| d |> (T <| a |> F)"


def test_round_trip_random_terms():
    rng = random.Random(11)
    leaves = leaf_pool(["a", "b", "c1"], ["X", "Yy"])
    for _ in range(2000):
        t = random_term(rng, leaves, rng.randrange(1, 41))
        text = print_term(t)
        assert parse_term(text) == t
        for sugar in ("~", ";", "&>", "<&", "or>", "<or", "->", "<-"):
            assert sugar not in text


def test_ba_parse_and_print():
    assert parse_ba("!a | b") == Or(Not(AtomB("a")), AtomB("b"))
    assert print_ba(parse_ba("a & (b | c)")) == "a & (b | c)"
    assert parse_ba("T & F") == And(TrueB(), FalseB())
    assert parse_ba("a | b & X") == Or(AtomB("a"), And(AtomB("b"), VarB("X")))
    assert parse_ba("a & b & c") == And(And(AtomB("a"), AtomB("b")), AtomB("c"))
    with pytest.raises(ParseError):
        parse_ba("a &")


def _random_ba(rng, depth):
    if depth == 0 or rng.random() < 0.3:
        return rng.choice([TrueB(), FalseB(), AtomB("a"), AtomB("b"), VarB("X")])
    kind = rng.randrange(3)
    if kind == 0:
        return Not(_random_ba(rng, depth - 1))
    node = And if kind == 1 else Or
    return node(_random_ba(rng, depth - 1), _random_ba(rng, depth - 1))


def test_ba_round_trip():
    rng = random.Random(5)
    for _ in range(2000):
        s = _random_ba(rng, 6)
        assert parse_ba(print_ba(s)) == s


def test_history_text():
    assert format_history(()) == "eps"
    assert format_history(("a", "b")) == "a.b"
    assert parse_history("eps") == ()
    assert parse_history("a.b.a") == ("a", "b", "a")


VALUATION_FILE = """\
variety fr
alphabet a b
depth 2   # histories up to two atoms
@eps : a=1 b=0
@a : a=0
@a.b : b=1
"""


def test_valuation_file_defaults_and_lookup():
    v = parse_valuation(VALUATION_FILE)
    assert v.variety is SemVariety.FREE and v.depth == 2
    assert v.table[()]["a"] is True
    assert v.table[("a",)]["a"] is False
    assert v.table[("a", "b")]["b"] is True
    assert v.table[("b", "b")]["a"] is False


def test_valuation_file_round_trip():
    for variety in (SemVariety.FREE, SemVariety.RP, SemVariety.CR, SemVariety.ST, SemVariety.NR):
        v = random_valuation(variety, Alphabet(["a", "b"]), 3, seed=7)
        assert parse_valuation(print_valuation(v)) == v


def test_special_valuation_file():
    v = parse_valuation("variety rp\nalphabet a\nspecial T\n")
    assert v.special is Special.TRUE


@pytest.mark.parametrize("text, fragment", [
    ("alphabet a\n", "headers"),
    ("variety fr\nalphabet a\ndepth 1\n@eps : a=2\n", "bad cell"),
    ("variety fr\nalphabet a\ndepth 1\n@eps : c=1\n", "not in alphabet"),
    ("variety fr\nalphabet a\ndepth 1\n@a.a : a=1\n", "exceeds depth"),
    ("variety cr\nalphabet a\ndepth 2\n@a : a=1\n@a.a : a=0\n", "conflicting"),
    ("variety rp\nalphabet a\ndepth 1\n@eps : a=1\n@a : a=0\n", "violates"),
    ("variety fr\nalphabet a\nfoo 1\n", "unknown directive"),
])
def test_valuation_file_errors(text, fragment):
    with pytest.raises(ParseError) as info:
        parse_valuation(text)
    assert fragment in str(info.value)


def test_constraint_error_points_at_offending_line():
    text = "variety rp\nalphabet a\ndepth 1\n@eps : a=1\n@a : a=0\n"
    with pytest.raises(ParseError) as info:
        parse_valuation(text)
    span = info.value.span
    assert text[span.start:span.end].startswith("@")
