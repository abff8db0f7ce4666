"""Translations between conditional terms and Boolean algebra.

``to_ba`` maps ``l <| c |> r`` to ``(!c | l) & (c | r)``; ``from_ba`` maps
the Boolean connectives back to conditionals.  Under the static variety the
two are mutually inverse, so truth tables decide static congruence, open
terms included.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .errors import SizeGuardError
from .terms import Atom, Cond, F, FalseC, T, Term, TrueC, Var

MAX_SYMBOLS = 20


class BATerm:
    __slots__ = ()

    def __str__(self):
        from .syntax import print_ba

        return print_ba(self)


@dataclass(frozen=True, slots=True)
class TrueB(BATerm):
    pass


@dataclass(frozen=True, slots=True)
class FalseB(BATerm):
    pass


@dataclass(frozen=True, slots=True)
class AtomB(BATerm):
    name: str


@dataclass(frozen=True, slots=True)
class VarB(BATerm):
    name: str


@dataclass(frozen=True, slots=True)
class Not(BATerm):
    arg: BATerm


@dataclass(frozen=True, slots=True)
class And(BATerm):
    left: BATerm
    right: BATerm


@dataclass(frozen=True, slots=True)
class Or(BATerm):
    left: BATerm
    right: BATerm


TOP = TrueB()
BOTTOM = FalseB()

Assignment = Mapping[str, bool]
Symbol = Union[AtomB, VarB]


def to_ba(t: Term) -> BATerm:
    match t:
        case TrueC():
            return TOP
        case FalseC():
            return BOTTOM
        case Atom(name):
            return AtomB(name)
        case Var(name):
            return VarB(name)
        case Cond(left, ante, right):
            c = to_ba(ante)
            return And(Or(Not(c), to_ba(left)), Or(c, to_ba(right)))
    raise TypeError(t)


def from_ba(t: BATerm) -> Term:
    match t:
        case TrueB():
            return T
        case FalseB():
            return F
        case AtomB(name):
            return Atom(name)
        case VarB(name):
            return Var(name)
        case Not(arg):
            return Cond(F, from_ba(arg), T)
        case Or(left, right):
            return Cond(T, from_ba(left), from_ba(right))
        case And(left, right):
            return Cond(from_ba(right), from_ba(left), F)
    raise TypeError(t)


def symbols_of(t: BATerm) -> list[str]:
    """Atom and variable names in first-occurrence order, one shared pool."""
    out: dict[str, None] = {}
    seen: set[int] = set()
    stack = [t]
    while stack:
        s = stack.pop()
        if id(s) in seen:
            continue
        seen.add(id(s))
        match s:
            case AtomB(name) | VarB(name):
                out.setdefault(name)
            case Not(arg):
                stack.append(arg)
            case And(l, r) | Or(l, r):
                stack.extend((r, l))
    return list(out)


def ba_eval(t: BATerm, rho: Assignment) -> bool:
    match t:
        case TrueB():
            return True
        case FalseB():
            return False
        case AtomB(name) | VarB(name):
            return bool(rho[name])
        case Not(arg):
            return not ba_eval(arg, rho)
        case And(l, r):
            return ba_eval(l, rho) and ba_eval(r, rho)
        case Or(l, r):
            return ba_eval(l, rho) or ba_eval(r, rho)
    raise TypeError(t)


def truth_vector(t: BATerm, symbols: list[str]) -> int:
    """The whole truth table of ``t`` packed into one integer.

    Bit ``i`` is the value under the assignment whose j-th symbol is bit
    ``j`` of ``i``.  Evaluating on bit-vectors keeps ``ba_equal`` linear in
    the term size.
    """
    k = len(symbols)
    if k > MAX_SYMBOLS:
        raise SizeGuardError(f"{k} symbols exceed the truth-table guard of {MAX_SYMBOLS}")
    rows = 1 << k
    full = (1 << rows) - 1
    columns = {}
    for j, name in enumerate(symbols):
        block = (1 << (1 << j)) - 1
        pattern = 0
        for start in range(1 << j, rows, 1 << (j + 1)):
            pattern |= block << start
        columns[name] = pattern

    # Translated terms share subterms, so evaluate each node object once.
    memo: dict[int, int] = {}

    def go(s: BATerm) -> int:
        key = id(s)
        if key not in memo:
            memo[key] = _vector(s)
        return memo[key]

    def _vector(s: BATerm) -> int:
        match s:
            case TrueB():
                return full
            case FalseB():
                return 0
            case AtomB(name) | VarB(name):
                return columns[name]
            case Not(arg):
                return full & ~go(arg)
            case And(l, r):
                return go(l) & go(r)
            case Or(l, r):
                return go(l) | go(r)
        raise TypeError(s)

    return go(t)


def ba_equal(s: BATerm, t: BATerm) -> bool:
    names = list(dict.fromkeys(symbols_of(s) + symbols_of(t)))
    return truth_vector(s, names) == truth_vector(t, names)


def decide_st_via_ba(p: Term, q: Term) -> bool:
    """Static congruence of two terms, open or closed, by truth table."""
    return ba_equal(to_ba(p), to_ba(q))


BA_AXIOMS: dict[str, tuple[BATerm, BATerm]] = {}


def _ba_axioms():
    x, y, z = VarB("X"), VarB("Y"), VarB("Z")
    return {
        "BA1": (Or(x, y), Or(y, x)),
        "BA2": (And(x, y), And(y, x)),
        "BA3": (Or(x, Or(y, z)), Or(Or(x, y), z)),
        "BA4": (And(x, Or(x, y)), x),
        "BA5": (Or(x, And(x, y)), x),
        "BA6": (Or(x, And(y, z)), And(Or(x, y), Or(x, z))),
        "BA7": (Or(BOTTOM, x), x),
        "BA8": (And(x, TOP), x),
        "BA9": (And(x, Not(x)), BOTTOM),
        "BA10": (Or(Not(x), x), TOP),
        "BA11": (Not(And(x, y)), Or(Not(x), Not(y))),
    }


BA_AXIOMS.update(_ba_axioms())
