"""Canonical closed forms per variety and the congruence tests built on them.

* BF: T, F, or ``P <| a |> Q`` with P, Q basic forms.
* BF_rp: a basic form where any child rooted at its parent's atom has two
  syntactically equal children.
* BF_cr: a basic form where no child is rooted at its parent's atom.
* BF_st: the full decision tree testing a_1 at level 1, a_2 at level 2, and
  so on, with constant leaves.

Each is unique per congruence class, given at least two atoms for rp and cr,
so syntactic equality of images decides the congruence.
"""

from __future__ import annotations

import enum
from typing import Iterable

from .rewrite import normalize
from .terms import (Alphabet, Atom, Cond, F, FalseC, T, Term, TrueC, require_closed, resolve_alphabet,
                    seq_compose)


class Variety(enum.Enum):
    FR = "fr"
    RP = "rp"
    CR = "cr"
    ST = "st"

    @classmethod
    def parse(cls, text: str) -> "Variety":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown variety {text!r}; expected fr, rp, cr or st") from None


def _rooted_at(t: Term, a: Term) -> bool:
    return isinstance(t, Cond) and t.ante == a


def _is_bf(t: Term) -> bool:
    if isinstance(t, Cond):
        return isinstance(t.ante, Atom) and _is_bf(t.left) and _is_bf(t.right)
    return isinstance(t, (TrueC, FalseC))


def _is_bf_rp(t: Term) -> bool:
    if not isinstance(t, Cond):
        return True
    for child in (t.left, t.right):
        if _rooted_at(child, t.ante) and child.left != child.right:
            return False
    return _is_bf_rp(t.left) and _is_bf_rp(t.right)


def _is_bf_cr(t: Term) -> bool:
    if not isinstance(t, Cond):
        return True
    if _rooted_at(t.left, t.ante) or _rooted_at(t.right, t.ante):
        return False
    return _is_bf_cr(t.left) and _is_bf_cr(t.right)


def _is_bf_st(t: Term, names: tuple[str, ...]) -> bool:
    if not names:
        return isinstance(t, (TrueC, FalseC))
    return (isinstance(t, Cond) and t.ante == Atom(names[0])
            and _is_bf_st(t.left, names[1:]) and _is_bf_st(t.right, names[1:]))


def is_basic_form(p: Term, variety: Variety, alphabet: Alphabet | Iterable[str] | None = None) -> bool:
    require_closed(p)
    alphabet = resolve_alphabet([p], alphabet)
    if not _is_bf(p):
        return False
    if variety is Variety.RP:
        return _is_bf_rp(p)
    if variety is Variety.CR:
        return _is_bf_cr(p)
    if variety is Variety.ST:
        return _is_bf_st(p, alphabet.names)
    return True


def _bf(t: Term) -> Term:
    match t:
        case TrueC() | FalseC():
            return t
        case Atom():
            return Cond(T, t, F)
        case Cond(left, ante, right):
            return _push(_bf(left), _bf(ante), _bf(right))
    raise TypeError(t)


def _push(p1: Term, q: Term, p3: Term) -> Term:
    """Basic form of ``p1 <| q |> p3`` for basic forms p1, q, p3."""
    if isinstance(q, TrueC):
        return p1
    if isinstance(q, FalseC):
        return p3
    return Cond(_push(p1, q.left, p3), q.ante, _push(p1, q.right, p3))


def to_basic_form(p: Term) -> Term:
    require_closed(p)
    return _bf(p)


def _bf_rp(t: Term) -> Term:
    if not isinstance(t, Cond):
        return t
    a = t.ante
    left, right = _bf_rp(t.left), _bf_rp(t.right)
    if _rooted_at(left, a):
        left = seq_compose(a, left.left)
    if _rooted_at(right, a):
        right = seq_compose(a, right.right)
    return Cond(left, a, right)


def _bf_cr(t: Term) -> Term:
    if not isinstance(t, Cond):
        return t
    a = t.ante
    left, right = _bf_cr(t.left), _bf_cr(t.right)
    if _rooted_at(left, a):
        left = left.left
    if _rooted_at(right, a):
        right = right.right
    return Cond(left, a, right)


def to_bf_rp(p: Term, alphabet: Alphabet | Iterable[str] | None = None) -> Term:
    require_closed(p)
    resolve_alphabet([p], alphabet)
    return _bf_rp(_bf(p))


def to_bf_cr(p: Term, alphabet: Alphabet | Iterable[str] | None = None) -> Term:
    require_closed(p)
    resolve_alphabet([p], alphabet)
    return _bf_cr(_bf(p))


def constant_tree(c: Term, names: tuple[str, ...]) -> Term:
    """Full static tree over ``names`` with every leaf ``c``."""
    for name in reversed(names):
        c = Cond(c, Atom(name), c)
    return c


def merge(p: Term, atom: str, r: Term, names: tuple[str, ...]) -> Term:
    """Static tree equal to ``p <| atom |> r`` for static trees p and r."""
    first = Atom(names[0])
    if atom == names[0]:
        return Cond(p.left, first, r.right)
    return Cond(merge(p.left, atom, r.left, names[1:]), first,
                merge(p.right, atom, r.right, names[1:]))


def to_bf_st(p: Term, alphabet: Alphabet | Iterable[str] | None = None) -> Term:
    require_closed(p)
    names = resolve_alphabet([p], alphabet).names

    def go(t: Term) -> Term:
        if isinstance(t, Atom):
            return merge(constant_tree(T, names), t.name, constant_tree(F, names), names)
        if isinstance(t, Cond):
            return _select(go(t.left), go(t.ante), go(t.right))
        return constant_tree(t, names)

    return go(p)


def _select(p: Term, c: Term, r: Term) -> Term:
    """Leafwise ``p <| c |> r`` for aligned static trees with T/F leaves."""
    if isinstance(c, Cond):
        return Cond(_select(p.left, c.left, r.left), c.ante, _select(p.right, c.right, r.right))
    return p if isinstance(c, TrueC) else r


def decide(variety: Variety, p: Term, q: Term, alphabet: Alphabet | Iterable[str] | None = None) -> bool:
    """Whether ``p`` and ``q`` are congruent in ``variety``.

    Free congruence accepts open terms.  For rp and cr over a one-atom
    alphabet the answer is the static one, since the two coincide there.
    """
    if variety is Variety.FR:
        resolve_alphabet([p, q], alphabet)
        return normalize(p) == normalize(q)
    require_closed(p, q)
    alphabet = resolve_alphabet([p, q], alphabet)
    if variety in (Variety.RP, Variety.CR) and len(alphabet) == 1:
        variety = Variety.ST
    if variety is Variety.RP:
        return to_bf_rp(p, alphabet) == to_bf_rp(q, alphabet)
    if variety is Variety.CR:
        return to_bf_cr(p, alphabet) == to_bf_cr(q, alphabet)
    return to_bf_st(p, alphabet) == to_bf_st(q, alphabet)
