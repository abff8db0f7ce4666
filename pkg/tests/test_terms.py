import random

import pytest

from seqprop.errors import AlphabetError, OpenTermError
from seqprop.rewrite import RULES, prove_equal_cp
from seqprop.syntax import parse_term
from seqprop.terms import (Alphabet, Atom, Cond, Connective, F, T, Var, apply_connective, atoms_of,
                           cond, enumerate_terms, height, is_closed, leaf_pool, negate, norm,
                           random_term, replace_at, require_closed, resolve_alphabet, seq_compose,
                           size, substitute, subterm_at, subterms, syntactic_eq, vars_of)

a, b, c = Atom("a"), Atom("b"), Atom("c")
x, y, z = Var("X"), Var("Y"), Var("Z")


def test_cond_builds_the_node():
    assert cond(T, T, F) == Cond(T, T, F)
    assert cond(a, b, c) == parse_term("a <| b |> c")
    assert cond(T, a, F) == parse_term("T <| a |> F")


def test_negate():
    assert negate(a) == parse_term("F <| a |> T")
    assert negate(T) == parse_term("F <| T |> T")
    assert prove_equal_cp(negate(negate(x)), x)


@pytest.mark.parametrize("conn, expected", [
    (Connective.LEFT_AND, "Y <| X |> F"),
    (Connective.RIGHT_AND, "X <| Y |> F"),
    (Connective.LEFT_OR, "T <| X |> Y"),
    (Connective.RIGHT_OR, "T <| Y |> X"),
    (Connective.LEFT_IMP, "Y <| X |> T"),
    (Connective.RIGHT_IMP, "T <| Y |> (F <| X |> T)"),
    (Connective.LEFT_BIIMP, "Y <| X |> (F <| Y |> T)"),
    (Connective.RIGHT_BIIMP, "X <| Y |> (F <| X |> T)"),
])
def test_connective_table(conn, expected):
    assert apply_connective(conn, x, y) == parse_term(expected)


def test_seq_compose():
    assert seq_compose(a, T) == parse_term("T <| a |> T")
    assert seq_compose(T, a) == parse_term("a <| T |> a")
    assert prove_equal_cp(seq_compose(x, seq_compose(y, z)), seq_compose(seq_compose(x, y), z))


def test_norm_values():
    assert norm(T) == 1
    assert norm(parse_term("a <| b |> c")) == 3
    assert norm(parse_term("T <| (T <| a |> F) |> F")) == 7
    assert norm(parse_term("(T <| T |> F) <| a |> (T <| F |> F)")) == 5


def test_norm_dominates_children():
    rng = random.Random(3)
    leaves = leaf_pool(["a", "b"], ["X"])
    for _ in range(500):
        t = random_term(rng, leaves, rng.randrange(1, 30))
        assert norm(t) >= 1
        if isinstance(t, Cond):
            assert norm(t) > max(norm(t.left), norm(t.ante), norm(t.right))


def test_norm_drops_on_rule_instances():
    rng = random.Random(4)
    leaves = leaf_pool(["a", "b", "c"], ["X", "Y"])
    for _ in range(2000):
        rule = rng.choice(RULES)
        mapping = {n: random_term(rng, leaves, rng.randrange(1, 12)) for n in vars_of(rule.lhs)}
        assert norm(substitute(rule.lhs, mapping)) > norm(substitute(rule.rhs, mapping))


def test_connectives_use_only_conditionals():
    allowed = (type(T), type(F), Atom, Var, Cond)
    for conn in Connective:
        assert all(isinstance(s, allowed) for s in subterms(apply_connective(conn, a, negate(b))))


def test_inspection_helpers():
    assert set(atoms_of(parse_term("a <| b |> a"))) == {"a", "b"}
    assert not is_closed(parse_term("T <| X |> F"))
    assert is_closed(parse_term("T <| a |> F"))
    assert not syntactic_eq(parse_term("T <| a |> F"), a)
    assert vars_of(parse_term("X <| a |> (Y <| X |> F)")) == ["X", "Y"]


def test_size_counts_leaves_and_height():
    t = parse_term("(a <| b |> c) <| T |> F")
    assert size(t) == 5
    assert height(t) == 3
    assert size(a) == 1 and height(a) == 1


def test_paths_and_substitution():
    t = parse_term("a <| (b <| c |> F) |> T")
    assert subterm_at(t, ("ante", "ante")) == c
    assert replace_at(t, ("ante", "right"), T) == parse_term("a <| (b <| c |> T) |> T")
    assert substitute(parse_term("X <| Y |> X"), {"X": a, "Y": T}) == parse_term("a <| T |> a")


def test_require_closed():
    require_closed(a, T)
    with pytest.raises(OpenTermError):
        require_closed(a, x)


def test_alphabet_validation_and_defaults():
    assert list(Alphabet.parse("a, b c")) == ["a", "b", "c"]
    for bad in ([], ["a", "a"], ["A"], ["1a"]):
        with pytest.raises(AlphabetError):
            Alphabet(bad)
    assert list(resolve_alphabet([parse_term("b <| a |> b")], None)) == ["b", "a"]
    assert list(resolve_alphabet([T], None)) == ["a"]
    with pytest.raises(AlphabetError):
        resolve_alphabet([c], ["a", "b"])


def test_enumeration_counts():
    # k conditionals give size 2k+1; ternary trees with k nodes: 1, 1, 3, 12.
    terms = enumerate_terms(leaf_pool(["a"]), 7)
    counts = {}
    for t in terms:
        counts[size(t)] = counts.get(size(t), 0) + 1
    assert counts == {1: 3, 3: 27, 5: 3 * 3 ** 5, 7: 12 * 3 ** 7}
    assert len(set(terms)) == len(terms)


def test_random_term_has_requested_size():
    rng = random.Random(0)
    leaves = leaf_pool(["a", "b"])
    for n in (1, 3, 9, 21, 39):
        assert size(random_term(rng, leaves, n)) == n


def test_terms_are_hashable_values():
    s, t = parse_term("a <| b |> (c <| a |> T)"), parse_term("a <| b |> (c <| a |> T)")
    assert s == t and hash(s) == hash(t) and s is not t
    assert len({s, t}) == 1
