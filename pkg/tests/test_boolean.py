import itertools
import random

import pytest

from seqprop.basic_forms import Variety, decide, to_bf_st
from seqprop.boolean import (BA_AXIOMS, And, AtomB, FalseB, Not, Or, TrueB, VarB, ba_equal, ba_eval,
                             decide_st_via_ba, from_ba, symbols_of, to_ba, truth_vector)
from seqprop.errors import SizeGuardError
from seqprop.syntax import parse_ba, parse_term
from seqprop.terms import Atom, T, Var, enumerate_terms, leaf_pool, random_term, seq_compose
from seqprop.valuations import SemVariety, congruent_oracle

P = parse_term
a, b, c = AtomB("a"), AtomB("b"), AtomB("c")
x, y = VarB("X"), VarB("Y")


def test_to_ba_examples():
    assert to_ba(P("a <| b |> c")) == And(Or(Not(b), a), Or(b, c))
    assert to_ba(T) == TrueB()
    cp1 = to_ba(P("X <| T |> Y"))
    assert cp1 == And(Or(Not(TrueB()), x), Or(TrueB(), y))
    assert ba_equal(cp1, x)


def test_from_ba_examples():
    assert from_ba(Or(x, y)) == P("T <| X |> Y")
    assert from_ba(Not(a)) == P("F <| a |> T")
    assert from_ba(TrueB()) == T
    assert from_ba(And(a, b)) == P("b <| a |> F")


def test_evaluation_and_equality():
    assert ba_eval(parse_ba("(!b | a) & (b | c)"), {"a": True, "b": True, "c": False})
    assert ba_equal(Or(x, y), Or(y, x))
    assert not ba_equal(a, Not(a))
    assert symbols_of(parse_ba("b & (X | b) & a")) == ["b", "X", "a"]


def test_truth_vector_matches_row_by_row_evaluation():
    rng = random.Random(51)
    names = ["a", "b", "X"]
    for _ in range(300):
        t = to_ba(random_term(rng, leaf_pool(["a", "b"], ["X"]), rng.randrange(1, 20)))
        vec = truth_vector(t, names)
        for i in range(1 << len(names)):
            rho = {n: bool(i >> j & 1) for j, n in enumerate(names)}
            assert bool(vec >> i & 1) == ba_eval(t, rho)


def test_truth_table_guard():
    big = Or(*[AtomB(f"a{i}") for i in range(2)])
    for i in range(2, 22):
        big = Or(big, AtomB(f"a{i}"))
    with pytest.raises(SizeGuardError):
        truth_vector(big, symbols_of(big))


def test_static_decision_via_ba_examples():
    assert decide_st_via_ba(seq_compose(Var("Y"), Var("X")), Var("X"))
    assert decide_st_via_ba(P("F <| a |> F"), P("F"))
    assert not decide_st_via_ba(Atom("a"), Atom("b"))


@pytest.mark.parametrize("name", sorted(BA_AXIOMS, key=lambda n: int(n[2:])))
def test_ba_axioms_hold(name):
    lhs, rhs = BA_AXIOMS[name]
    assert ba_equal(lhs, rhs)


def test_eleven_axioms():
    assert len(BA_AXIOMS) == 11


def _random_ba(rng, depth, symbols):
    if depth == 0 or rng.random() < 0.25:
        return rng.choice([TrueB(), FalseB(), *symbols])
    kind = rng.randrange(3)
    if kind == 0:
        return Not(_random_ba(rng, depth - 1, symbols))
    node = And if kind == 1 else Or
    return node(_random_ba(rng, depth - 1, symbols), _random_ba(rng, depth - 1, symbols))


def test_round_trip_terms_through_ba():
    rng = random.Random(52)
    closed, open_ = leaf_pool(["a", "b"]), leaf_pool(["a"], ["X", "Y"])
    for _ in range(500):
        s = random_term(rng, closed, rng.randrange(1, 25))
        assert decide(Variety.ST, s, from_ba(to_ba(s)), ["a", "b"])
        t = random_term(rng, open_, rng.randrange(1, 25))
        assert decide_st_via_ba(t, from_ba(to_ba(t)))


def test_round_trip_ba_through_terms():
    rng = random.Random(53)
    for _ in range(500):
        s = _random_ba(rng, 6, [a, b, x])
        assert ba_equal(to_ba(from_ba(s)), s)


def test_static_decisions_agree_three_ways():
    names = ["a", "b"]
    classes = {}
    for t in enumerate_terms(leaf_pool(names), 5):
        classes.setdefault(truth_vector(to_ba(t), names), []).append(t)
    reps = [members[0] for members in classes.values()]
    for members in classes.values():
        for t in members[1:]:
            assert decide(Variety.ST, members[0], t, names)
            assert congruent_oracle(SemVariety.ST, members[0], t, names)
    for p, q in itertools.combinations(reps, 2):
        assert not decide_st_via_ba(p, q)
        assert not decide(Variety.ST, p, q, names)
        assert not congruent_oracle(SemVariety.ST, p, q, names)


def test_truth_tables_and_static_forms_partition_alike_to_size_seven():
    names = ["a", "b"]
    by_vector, by_form = {}, {}
    for i, t in enumerate(enumerate_terms(leaf_pool(names), 7)):
        by_vector.setdefault(truth_vector(to_ba(t), names), []).append(i)
        by_form.setdefault(to_bf_st(t, names), []).append(i)
    assert sorted(by_vector.values()) == sorted(by_form.values())
    assert len(by_form) == 16
