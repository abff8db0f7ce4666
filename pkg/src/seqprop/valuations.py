"""Reactive valuations: yields, derivatives and the laws of each variety.

A valuation state is identified with the history of atoms evaluated so
far, reduced to a canonical form by the variety's derivative laws.  The
yield of atom ``a`` in state ``h`` is a table cell.  Variety laws on yields
tie cells together into chains; a chain is either forced constant
(``EQ``), may only switch from T to F as ``a`` repeats (``DEC``), or may
only switch from F to T (``INC``).

Two evaluation back ends share that cell model:

* ``Valuation`` holds an explicit finite table (files, enumeration, CLI).
* ``LazyValuation`` draws cells at random on first use (property tests).

``congruent_oracle`` explores every consistent choice for exactly the
cells a pair of terms reads, so it quantifies over all lawful valuations
without materialising any table.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .axioms import ATOM_META, Axiom, lookup_axiom
from .errors import DepthExceeded, OpenTermError, SizeGuardError
from .terms import (Alphabet, Atom, Cond, FalseC, Term, TrueC, Var, leaf_pool,
                    require_closed, resolve_alphabet)

History = tuple[str, ...]

ENUM_MAX_ATOMS = 2
ENUM_MAX_DEPTH = 3
DEFAULT_TRIALS = 10_000


class SemVariety(enum.Enum):
    FREE = "free"
    RP = "rp"
    CR = "cr"
    ST = "st"
    NR = "nr"
    RP1 = "rp1"
    RP2 = "rp2"
    CR1 = "cr1"
    CR2 = "cr2"
    STATCOUNTER = "statcounter"

    @classmethod
    def parse(cls, text: str) -> "SemVariety":
        text = text.strip().lower()
        if text == "fr":
            return cls.FREE
        try:
            return cls(text)
        except ValueError:
            raise ValueError(f"unknown variety {text!r}") from None


class Special(enum.Enum):
    TRUE = "T"
    FALSE = "F"

    @classmethod
    def parse(cls, text: str) -> "Special":
        return cls(text.strip().upper())


_GROWING = {SemVariety.FREE, SemVariety.RP, SemVariety.RP1, SemVariety.RP2}

EQ, DEC, INC = "eq", "dec", "inc"
_CHAIN_KIND = {
    SemVariety.FREE: EQ, SemVariety.RP: EQ, SemVariety.CR: EQ, SemVariety.ST: EQ,
    SemVariety.NR: EQ, SemVariety.STATCOUNTER: EQ,
    SemVariety.RP1: DEC, SemVariety.CR1: DEC,
    SemVariety.RP2: INC, SemVariety.CR2: INC,
}


def canonicalize(variety: SemVariety, h: Sequence[str]) -> History:
    h = tuple(h)
    if variety in _GROWING:
        return h
    if variety is SemVariety.ST:
        return ()
    if variety is SemVariety.NR:
        return tuple(dict.fromkeys(h))
    return tuple(a for i, a in enumerate(h) if i == 0 or h[i - 1] != a)


def _append(variety: SemVariety, h: History, a: str) -> History:
    """Canonical form of ``h + (a,)`` for an already canonical ``h``."""
    if variety in _GROWING:
        return h + (a,)
    if variety is SemVariety.ST:
        return ()
    if variety is SemVariety.NR:
        return h if a in h else h + (a,)
    return h if h and h[-1] == a else h + (a,)


def cell_of(variety: SemVariety, h: History, a: str) -> tuple[tuple[History, str], int]:
    """Chain key and position of the yield of ``a`` at canonical ``h``."""
    if variety is SemVariety.FREE:
        return (h, a), 0
    if variety is SemVariety.ST:
        return ((), a), 0
    if variety is SemVariety.NR:
        return (h[:h.index(a)] if a in h else h, a), 0
    k = len(h)
    while k and h[k - 1] == a:
        k -= 1
    return (h[:k], a), len(h) - k


def state_key(variety: SemVariety, h: Sequence[str], alphabet: Alphabet | Sequence[str]) -> History:
    """Canonical state, identifying states no valuation can tell apart.

    With a single atom, every rp, cr or nr history reads the same cells as
    the empty one, so all states coincide.
    """
    if variety is SemVariety.ST:
        return ()
    if len(alphabet) == 1 and variety in (SemVariety.RP, SemVariety.CR, SemVariety.NR):
        return ()
    return canonicalize(variety, h)


def canonical_histories(variety: SemVariety, alphabet: Alphabet, depth: int) -> list[History]:
    """All canonical histories of length at most ``depth``, shortest first."""
    out: list[History] = [()]
    frontier: list[History] = [()]
    for _ in range(depth):
        nxt = []
        for h in frontier:
            for a in alphabet:
                g = _append(variety, h, a)
                if len(g) == len(h) + 1:
                    nxt.append(g)
        out.extend(nxt)
        frontier = nxt
    return out


def _chain_ok(kind: str, values: Sequence[bool]) -> bool:
    """``values`` are ordered by chain position."""
    if kind == EQ:
        return len(set(values)) <= 1
    if kind == DEC:
        return all(values[i] or not values[i + 1] for i in range(len(values) - 1))
    return all(not values[i] or values[i + 1] for i in range(len(values) - 1))


def _chain_options(kind: str, chain: Mapping[int, bool] | None, idx: int) -> tuple[bool, ...]:
    """Values the cell at ``idx`` may take given the chain's fixed cells."""
    if not chain:
        return (False, True)
    if idx in chain:
        return (chain[idx],)
    if kind == EQ:
        return (next(iter(chain.values())),)
    lower = [v for j, v in chain.items() if j < idx]
    higher = [v for j, v in chain.items() if j > idx]
    if kind == DEC:
        if not all(lower):
            return (False,)
        if any(higher):
            return (True,)
    else:
        if any(lower):
            return (True,)
        if not all(higher):
            return (False,)
    return (False, True)


@dataclass(frozen=True)
class Valuation:
    variety: SemVariety
    alphabet: Alphabet
    depth: int
    table: Mapping[History, Mapping[str, bool]] = field(default_factory=dict)
    special: Special | None = None

    @classmethod
    def blank(cls, variety: SemVariety, alphabet: Alphabet, depth: int) -> "Valuation":
        """Every cell F; lawful in every variety."""
        hists = canonical_histories(variety, alphabet, depth)
        return cls(variety, alphabet, depth, {h: {a: False for a in alphabet} for h in hists})

    @classmethod
    def constant(cls, variety: SemVariety, alphabet: Alphabet, special: Special) -> "Valuation":
        return cls(variety, alphabet, 0, {}, special)

    def yield_at(self, h: History, a: str) -> bool:
        if self.special is not None:
            return self.special is Special.TRUE
        h = canonicalize(self.variety, h)
        if len(h) > self.depth:
            raise DepthExceeded(f"history of length {len(h)} exceeds depth {self.depth}")
        return self.table[h][a]

    def step(self, h: History, a: str) -> History:
        if self.special is not None:
            return tuple(h)
        g = _append(self.variety, canonicalize(self.variety, h), a)
        if len(g) > self.depth:
            raise DepthExceeded(f"history of length {len(g)} exceeds depth {self.depth}")
        return g

    def cells(self) -> dict[tuple[History, str], bool]:
        return {(h, a): row[a] for h, row in self.table.items() for a in row}


def constraint_violations(v: Valuation) -> list[tuple[History, str]]:
    """Broken variety laws as ``(history, description)``, empty if lawful."""
    if v.special is not None:
        return []
    problems = []
    for h in canonical_histories(v.variety, v.alphabet, v.depth):
        if h not in v.table or set(v.table[h]) != set(v.alphabet):
            problems.append((h, f"missing cells at history {'.'.join(h) or 'eps'}"))
    if problems:
        return problems
    kind = _CHAIN_KIND[v.variety]
    chains: dict[tuple[History, str], dict[int, tuple[History, bool]]] = {}
    for (h, a), value in v.cells().items():
        key, idx = cell_of(v.variety, h, a)
        chains.setdefault(key, {})[idx] = (h, value)
    for key, chain in chains.items():
        ordered = [chain[i] for i in sorted(chain)]
        if not _chain_ok(kind, [val for _, val in ordered]):
            h = ordered[-1][0]
            base = ".".join(key[0]) or "eps"
            problems.append((h, f"yields of {key[1]} after {base} break the {kind} law"))
    return problems


def check_constraints(v: Valuation) -> bool:
    return not constraint_violations(v)


def yield_of(v, h: Sequence[str], a: str) -> bool:
    return v.yield_at(tuple(h), a)


def derive_atom(v, h: Sequence[str], a: str) -> History:
    return v.step(tuple(h), a)


def run(p: Term, v, h: Sequence[str] = ()) -> tuple[bool, History]:
    """Value of ``p`` in state ``h`` together with the state after ``p``."""
    h = tuple(h)
    match p:
        case TrueC():
            return True, h
        case FalseC():
            return False, h
        case Atom(name):
            return v.yield_at(h, name), v.step(h, name)
        case Var(name):
            raise OpenTermError(f"cannot evaluate variable {name}")
        case Cond(left, ante, right):
            b, g = run(ante, v, h)
            return run(left if b else right, v, g)
    raise TypeError(p)


def evaluate(p: Term, v, h: Sequence[str] = ()) -> bool:
    return run(p, v, h)[0]


def derivative(p: Term, v, h: Sequence[str] = ()) -> History:
    return run(p, v, h)[1]


def _guard(alphabet: Alphabet, depth: int):
    if len(alphabet) > ENUM_MAX_ATOMS or depth > ENUM_MAX_DEPTH:
        raise SizeGuardError(
            f"enumeration limited to {ENUM_MAX_ATOMS} atoms and depth {ENUM_MAX_DEPTH}")


def _chains(variety: SemVariety, alphabet: Alphabet, depth: int):
    chains: dict[tuple[History, str], list[tuple[int, History, str]]] = {}
    for h in canonical_histories(variety, alphabet, depth):
        for a in alphabet:
            key, idx = cell_of(variety, h, a)
            chains.setdefault(key, []).append((idx, h, a))
    return [sorted(c) for c in chains.values()]


def _chain_fillings(kind: str, n: int) -> list[tuple[bool, ...]]:
    if kind == EQ:
        return [(False,) * n, (True,) * n]
    if kind == DEC:
        return [(True,) * i + (False,) * (n - i) for i in range(n + 1)]
    return [(False,) * i + (True,) * (n - i) for i in range(n, -1, -1)]


def enumerate_valuations(variety: SemVariety, alphabet: Alphabet, depth: int) -> Iterator[Valuation]:
    """Every lawful table exactly once (small alphabets and depths only)."""
    _guard(alphabet, depth)
    kind = _CHAIN_KIND[variety]
    chains = _chains(variety, alphabet, depth)
    for choice in itertools.product(*(_chain_fillings(kind, len(c)) for c in chains)):
        table: dict[History, dict[str, bool]] = {}
        for chain, values in zip(chains, choice):
            for (_, h, a), value in zip(chain, values):
                table.setdefault(h, {})[a] = value
        yield Valuation(variety, alphabet, depth, table)


def random_valuation(variety: SemVariety, alphabet: Alphabet, depth: int,
                     seed: int | random.Random | None = None) -> Valuation:
    """Free cells drawn uniformly; forced cells follow from the chain law."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    kind = _CHAIN_KIND[variety]
    table: dict[History, dict[str, bool]] = {}
    for chain in _chains(variety, alphabet, depth):
        fixed: dict[int, bool] = {}
        for idx, h, a in chain:
            options = _chain_options(kind, fixed, idx)
            fixed[idx] = options[0] if len(options) == 1 else rng.random() < 0.5
            table.setdefault(h, {})[a] = fixed[idx]
    return Valuation(variety, alphabet, depth, table)


class LazyValuation:
    """A random lawful valuation of unbounded depth, drawn cell by cell."""

    def __init__(self, variety: SemVariety, rng: random.Random):
        self.variety = variety
        self.rng = rng
        self.chains: dict[tuple[History, str], dict[int, bool]] = {}
        self.seen: dict[tuple[History, str], bool] = {}

    def yield_at(self, h: History, a: str) -> bool:
        key, idx = cell_of(self.variety, h, a)
        chain = self.chains.setdefault(key, {})
        if idx not in chain:
            options = _chain_options(_CHAIN_KIND[self.variety], chain, idx)
            chain[idx] = options[0] if len(options) == 1 else self.rng.random() < 0.5
        self.seen[(h, a)] = chain[idx]
        return chain[idx]

    def step(self, h: History, a: str) -> History:
        return _append(self.variety, h, a)


# Exhaustive exploration -------------------------------------------------

Assignment = Mapping[tuple[History, str], Mapping[int, bool]]


def _explore(p: Term, variety: SemVariety, h: History,
             fixed: Assignment) -> Iterator[tuple[bool, History, Assignment]]:
    """Every (value, final state, extended assignment) over lawful tables."""
    match p:
        case TrueC():
            yield True, h, fixed
        case FalseC():
            yield False, h, fixed
        case Atom(name):
            key, idx = cell_of(variety, h, name)
            chain = fixed.get(key)
            g = _append(variety, h, name)
            if chain is not None and idx in chain:
                yield chain[idx], g, fixed
                return
            for value in _chain_options(_CHAIN_KIND[variety], chain, idx):
                extended = dict(fixed)
                extended[key] = {**(chain or {}), idx: value}
                yield value, g, extended
        case Var(name):
            raise OpenTermError(f"cannot evaluate variable {name}")
        case Cond(left, ante, right):
            for b, g, ext in _explore(ante, variety, h, fixed):
                yield from _explore(left if b else right, variety, g, ext)


@dataclass(frozen=True)
class Separation:
    """A partial valuation on which two terms differ."""

    cells: dict[tuple[History, str], bool]
    left: tuple[bool, History]
    right: tuple[bool, History]
    special: Special | None = None


def _flatten(fixed: Assignment) -> dict[tuple[History, str], bool]:
    return {(key[0] + (key[1],) * idx, key[1]): v
            for key, chain in fixed.items() for idx, v in chain.items()}


def find_separation(variety: SemVariety, p: Term, q: Term,
                    alphabet: Alphabet | Sequence[str] | None = None, *,
                    compare_states: bool = True,
                    premise: Sequence[Term] = ()) -> Separation | None:
    """Search all lawful valuations for one that tells ``p`` and ``q`` apart.

    Each term in ``premise`` must satisfy ``Q/dQ(H) = Q/H`` and
    ``dQ(dQ(H)) = dQ(H)`` at the start state; valuations where it does not
    are skipped.
    """
    require_closed(p, q, *premise)
    alphabet = resolve_alphabet([p, q, *premise], alphabet)
    for special in Special:
        const = Valuation.constant(variety, alphabet, special)
        rp, rq = run(p, const), run(q, const)
        if rp[0] != rq[0]:
            return Separation({}, rp, rq, special)

    def premised(fixed):
        branches = [fixed]
        for cond_term in premise:
            nxt = []
            for ext in branches:
                for b1, h1, e1 in _explore(cond_term, variety, (), ext):
                    for b2, h2, e2 in _explore(cond_term, variety, h1, e1):
                        if b1 == b2 and state_key(variety, h2, alphabet) == state_key(variety, h1, alphabet):
                            nxt.append(e2)
            branches = nxt
        return branches

    for start in premised({}):
        for vp, hp, fp in _explore(p, variety, (), start):
            for vq, hq, fq in _explore(q, variety, (), fp):
                if vp != vq or (compare_states and
                                state_key(variety, hp, alphabet) != state_key(variety, hq, alphabet)):
                    return Separation(_flatten(fq), (vp, hp), (vq, hq))
    return None


def truth_rows(p: Term, variety: SemVariety,
               alphabet: Alphabet | Sequence[str] | None = None) -> list[tuple[dict[tuple[History, str], bool], bool, History]]:
    """One row per way the lawful valuations can answer the atoms ``p`` reads.

    Each row lists the cells read (history, atom) -> yield, the value of
    ``p`` and the final state.  Rows come out with F tried before T at each
    read, which orders them lexicographically by the cells read.
    """
    require_closed(p)
    resolve_alphabet([p], alphabet)
    return [(_flatten(fixed), value, h) for value, h, fixed in _explore(p, variety, (), {})]


def equivalent(variety: SemVariety, p: Term, q: Term, alphabet=None) -> bool:
    """Same value in every lawful valuation, from the initial state."""
    return find_separation(variety, p, q, alphabet, compare_states=False) is None


def congruent_oracle(variety: SemVariety, p: Term, q: Term, alphabet=None) -> bool:
    """Same value and same resulting state in every lawful valuation."""
    return find_separation(variety, p, q, alphabet) is None


# Axiom soundness ----------------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    lhs: Term
    rhs: Term
    cells: dict[tuple[History, str], bool]
    lhs_result: tuple[bool, History]
    rhs_result: tuple[bool, History]


@dataclass(frozen=True)
class SoundnessResult:
    variety: SemVariety
    axiom: str
    trials: int
    skipped: int = 0
    counterexample: Counterexample | None = None

    @property
    def holds(self) -> bool:
        return self.counterexample is None


def random_instance(axiom: Axiom, rng: random.Random, atoms: Sequence[str],
                    max_height: int) -> tuple[Term, Term]:
    leaves = leaf_pool(atoms)
    mapping: dict[str, Term] = {m: random_closed(rng, leaves, max_height) for m in axiom.metavars}
    if axiom.has_atom:
        mapping[ATOM_META] = Atom(rng.choice(list(atoms)))
    return axiom.instantiate(mapping)


def random_closed(rng: random.Random, leaves: Sequence[Term], max_height: int) -> Term:
    """Random term of height at most ``max_height``; leaves get weight 1/2."""
    if max_height <= 1 or rng.random() < 0.5:
        return rng.choice(leaves)
    return Cond(*(random_closed(rng, leaves, max_height - 1) for _ in range(3)))


def check_axiom_soundness(variety: SemVariety, axiom: str | Axiom, trials: int = DEFAULT_TRIALS,
                          seed: int = 0, alphabet: Alphabet | Sequence[str] = ("a", "b", "c"),
                          max_height: int = 4) -> SoundnessResult:
    """Random instances of ``axiom`` against random lawful valuations.

    Both the value and the resulting state must agree.  Under StatCounter
    the CPcontr instances are only judged on valuations where their shared
    antecedent satisfies the variety's two laws at the start state.
    """
    if not isinstance(axiom, Axiom):
        axiom = lookup_axiom(axiom)
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(alphabet)
    rng = random.Random(seed)
    skipped = 0
    for _ in range(trials):
        lhs, rhs = random_instance(axiom, rng, list(alphabet), max_height)
        val = LazyValuation(variety, rng)
        if variety is SemVariety.STATCOUNTER and axiom.id == "CPcontr":
            ante = lhs.ante
            b1, h1 = run(ante, val)
            b2, h2 = run(ante, val, h1)
            if b1 != b2 or h1 != h2:
                skipped += 1
                continue
        left, right = run(lhs, val), run(rhs, val)
        if left[0] != right[0] or state_key(variety, left[1], alphabet) != state_key(variety, right[1], alphabet):
            return SoundnessResult(variety, axiom.id, trials, skipped,
                                   Counterexample(lhs, rhs, dict(val.seen), left, right))
    return SoundnessResult(variety, axiom.id, trials, skipped)
