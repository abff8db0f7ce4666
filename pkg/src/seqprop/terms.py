"""Terms built from T, F, atoms, variables and the ternary conditional.

``Cond(left, ante, right)`` is written ``left <| ante |> right`` and reads
"if ante then left else right".  Terms are immutable and hashable; a
conditional caches its hash so deep terms stay cheap as dictionary keys.
"""

from __future__ import annotations

import enum
import random
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

from .errors import AlphabetError, OpenTermError

ATOM_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
VAR_RE = re.compile(r"[A-Z][A-Za-z0-9_]*\Z")


class Term:
    """Common base of the five term constructors."""

    __slots__ = ()

    def __str__(self):
        from .syntax import print_term

        return print_term(self)


@dataclass(frozen=True, slots=True)
class TrueC(Term):
    def __repr__(self):
        return "T"


@dataclass(frozen=True, slots=True)
class FalseC(Term):
    def __repr__(self):
        return "F"


@dataclass(frozen=True, slots=True)
class Atom(Term):
    name: str

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, slots=True)
class Var(Term):
    name: str

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True, slots=True)
class Cond(Term):
    left: Term
    ante: Term
    right: Term
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.left, self.ante, self.right)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Cond) or self._hash != other._hash:
            return False
        return self.ante == other.ante and self.left == other.left and self.right == other.right

    def __repr__(self):
        return f"Cond({self.left!r}, {self.ante!r}, {self.right!r})"


T = TrueC()
F = FalseC()

Leaf = Union[TrueC, FalseC, Atom, Var]
Path = tuple[str, ...]
CHILDREN = ("left", "ante", "right")


@dataclass(frozen=True)
class Alphabet:
    """Ordered, non-empty set of atom names; the order fixes a_1..a_n."""

    names: tuple[str, ...]

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise AlphabetError("alphabet must be non-empty")
        if len(set(names)) != len(names):
            raise AlphabetError(f"duplicate atoms in alphabet {names}")
        for name in names:
            if not ATOM_RE.match(name):
                raise AlphabetError(f"{name!r} is not an atom identifier")
        object.__setattr__(self, "names", names)

    @classmethod
    def parse(cls, text: str) -> "Alphabet":
        """Read a comma- or space-separated list such as ``a,b,c``."""
        return cls(n for n in re.split(r"[,\s]+", text.strip()) if n)

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self.names

    def index(self, name: str) -> int:
        return self.names.index(name)

    def __str__(self):
        return ",".join(self.names)


class Connective(enum.Enum):
    LEFT_AND = "LeftAnd"
    RIGHT_AND = "RightAnd"
    LEFT_OR = "LeftOr"
    RIGHT_OR = "RightOr"
    LEFT_IMP = "LeftImp"
    RIGHT_IMP = "RightImp"
    LEFT_BIIMP = "LeftBiimp"
    RIGHT_BIIMP = "RightBiimp"


def cond(left: Term, ante: Term, right: Term) -> Cond:
    return Cond(left, ante, right)


def negate(t: Term) -> Cond:
    return Cond(F, t, T)


def seq_compose(x: Term, y: Term) -> Cond:
    """Evaluate ``x`` for its effect on the valuation, then yield ``y``."""
    return Cond(y, x, y)


def apply_connective(c: Connective, x: Term, y: Term) -> Cond:
    match c:
        case Connective.LEFT_AND:
            return Cond(y, x, F)
        case Connective.RIGHT_AND:
            return Cond(x, y, F)
        case Connective.LEFT_OR:
            return Cond(T, x, y)
        case Connective.RIGHT_OR:
            return Cond(T, y, x)
        case Connective.LEFT_IMP:
            return Cond(y, x, T)
        case Connective.RIGHT_IMP:
            return Cond(T, y, negate(x))
        case Connective.LEFT_BIIMP:
            return Cond(y, x, negate(y))
        case Connective.RIGHT_BIIMP:
            return Cond(x, y, negate(x))
    raise ValueError(c)


def norm(t: Term) -> int:
    """Termination measure of the rewriting system.

    Leaves weigh 1 and ``|l <| c |> r| = 2|c| + max(|l|, |r|)``.
    """
    if isinstance(t, Cond):
        return 2 * norm(t.ante) + max(norm(t.left), norm(t.right))
    return 1


def subterms(t: Term) -> Iterator[Term]:
    """Pre-order traversal, visiting children in left, ante, right order."""
    stack = [t]
    while stack:
        s = stack.pop()
        yield s
        if isinstance(s, Cond):
            stack.extend((s.right, s.ante, s.left))


def atoms_of(t: Term) -> list[str]:
    """Atom names in first-occurrence order (left, ante, right)."""
    seen: dict[str, None] = {}
    for s in subterms(t):
        if isinstance(s, Atom):
            seen.setdefault(s.name)
    return list(seen)


def vars_of(t: Term) -> list[str]:
    seen: dict[str, None] = {}
    for s in subterms(t):
        if isinstance(s, Var):
            seen.setdefault(s.name)
    return list(seen)


def is_closed(t: Term) -> bool:
    return not any(isinstance(s, Var) for s in subterms(t))


def syntactic_eq(s: Term, t: Term) -> bool:
    return s == t


def size(t: Term) -> int:
    """Number of leaf occurrences; a term with k conditionals has size 2k+1."""
    return sum(1 for s in subterms(t) if not isinstance(s, Cond))


def height(t: Term) -> int:
    if isinstance(t, Cond):
        return 1 + max(height(t.left), height(t.ante), height(t.right))
    return 1


def subterm_at(t: Term, path: Path) -> Term:
    for step in path:
        t = getattr(t, step)
    return t


def replace_at(t: Term, path: Path, new: Term) -> Term:
    if not path:
        return new
    head, rest = path[0], path[1:]
    assert isinstance(t, Cond)
    parts = {k: getattr(t, k) for k in CHILDREN}
    parts[head] = replace_at(parts[head], rest, new)
    return Cond(**parts)


def substitute(t: Term, mapping: Mapping[str, Term]) -> Term:
    """Replace variables by terms; variables missing from ``mapping`` stay."""
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Cond):
        return Cond(substitute(t.left, mapping), substitute(t.ante, mapping),
                    substitute(t.right, mapping))
    return t


def require_closed(*terms: Term) -> None:
    for t in terms:
        free = vars_of(t)
        if free:
            raise OpenTermError(f"term contains variables {', '.join(free)}")


def resolve_alphabet(terms: Sequence[Term], alphabet: Alphabet | Iterable[str] | None) -> Alphabet:
    """Check the atoms of ``terms`` against ``alphabet``.

    Without an explicit alphabet, use the occurring atoms in first-occurrence
    order; a term set without atoms gets the one-letter alphabet ``a``.
    """
    occurring: dict[str, None] = {}
    for t in terms:
        for name in atoms_of(t):
            occurring.setdefault(name)
    if alphabet is None:
        return Alphabet(occurring or ["a"])
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(alphabet)
    missing = [n for n in occurring if n not in alphabet]
    if missing:
        raise AlphabetError(f"atoms {', '.join(missing)} not in alphabet {alphabet}")
    return alphabet


def leaf_pool(atoms: Sequence[str], variables: Sequence[str] = ()) -> list[Term]:
    return [F, T, *map(Atom, atoms), *map(Var, variables)]


def enumerate_terms(leaves: Sequence[Term], max_size: int) -> list[Term]:
    """Every term over ``leaves`` with at most ``max_size`` leaf occurrences.

    Ordered by size, then lexicographically by (left, ante, right) position.
    """
    by_size: dict[int, list[Term]] = {1: list(leaves)}
    for n in range(3, max_size + 1, 2):
        out = []
        for i in range(1, n, 2):
            for j in range(1, n - i, 2):
                k = n - i - j
                if k < 1:
                    continue
                for l in by_size[i]:
                    for c in by_size[j]:
                        for r in by_size[k]:
                            out.append(Cond(l, c, r))
        by_size[n] = out
    return [t for n in sorted(by_size) for t in by_size[n]]


def random_term(rng: random.Random, leaves: Sequence[Term], size: int) -> Term:
    """Random term with exactly ``size`` leaves (rounded down to odd)."""
    conds = max(0, (size - 1) // 2)
    return _random_shape(rng, leaves, conds)


def _random_shape(rng: random.Random, leaves: Sequence[Term], conds: int) -> Term:
    if conds == 0:
        return rng.choice(leaves)
    rest = conds - 1
    i = rng.randint(0, rest)
    j = rng.randint(0, rest - i)
    parts = [i, j, rest - i - j]
    rng.shuffle(parts)
    return Cond(*(_random_shape(rng, leaves, p) for p in parts))


def fold(t: Term, leaf: Callable[[Term], object], node: Callable[[object, object, object], object]):
    """Bottom-up evaluation with memoisation on shared subterms."""
    memo: dict[Term, object] = {}

    def go(s: Term):
        if s in memo:
            return memo[s]
        if isinstance(s, Cond):
            out = node(go(s.left), go(s.ante), go(s.right))
        else:
            out = leaf(s)
        memo[s] = out
        return out

    return go(t)
