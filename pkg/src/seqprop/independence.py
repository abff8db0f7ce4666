"""Countermodels showing that each axiom is independent of the others.

Two kinds of model are used.

* A ``FiniteInterpretation`` maps T, F and the atoms to values and the
  conditional to a function of its three argument values.  Axiom instances
  are checked by substituting every closed term up to a size bound.
* A valuation variety (rp1, rp2, cr1, cr2, StatCounter) weakens one law of
  a known variety.  Non-target axioms are checked on sampled pool instances
  against every lawful valuation, and the target fails on a stored table.

``independence_report`` picks the model for a target and packages the
verdicts into an ``IndependenceReport``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .axioms import ATOM_META, AXIOM_SETS, Axiom, lookup_axiom, lookup_set
from .errors import AlphabetError, OpenTermError, SizeGuardError, UnresolvedIndependence
from .syntax import parse_term, print_term, print_valuation
from .terms import Alphabet, Atom, Cond, FalseC, Term, TrueC, Var, enumerate_terms, leaf_pool, subterms
from .valuations import (SemVariety, Valuation, canonical_histories, check_axiom_soundness,
                         check_constraints, find_separation, run, state_key)

MAX_POOL = 100_000
MAX_COMBINATIONS = 5_000_000
DEFAULT_BOUND = 3
DEFAULT_SAMPLES = 300
DEFAULT_TRIALS = 1_000

Value = object


# Finite interpretations ---------------------------------------------------


@dataclass(frozen=True)
class FiniteInterpretation:
    id: str
    carrier: str
    alphabet: Alphabet
    true: Value
    false: Value
    atoms: Mapping[str, Value]
    cond: Callable[[Value, Value, Value], Value]

    def show(self, value: Value) -> str:
        if isinstance(value, bool):
            return "T" if value else "F"
        return str(value)


def _numbered(alphabet: Alphabet, offset: int) -> dict[str, int]:
    return {name: i + offset for i, name in enumerate(alphabet, 1)}


def phi1(alphabet: Alphabet) -> FiniteInterpretation:
    """Booleans; the conditional is ``ante or right``, so CP1 fails."""
    return FiniteInterpretation("Phi1", "{T,F}", alphabet, True, False,
                                {a: False for a in alphabet}, lambda p, q, r: q or r)


def phi2(alphabet: Alphabet) -> FiniteInterpretation:
    """Booleans; the conditional is ``left and ante``, so CP2 fails."""
    return FiniteInterpretation("Phi2", "{T,F}", alphabet, True, False,
                                {a: False for a in alphabet}, lambda p, q, r: p and q)


def phi3(alphabet: Alphabet) -> FiniteInterpretation:
    """T is 0, F is n+1, a_i is i; antecedents at most 1 count as true."""
    n = len(alphabet)
    return FiniteInterpretation("Phi3", f"{{0..{n + 1}}}", alphabet, 0, n + 1,
                                _numbered(alphabet, 0), lambda p, q, r: p if q <= 1 else r)


def _phi4_cond(p: int, q: int, r: int) -> int:
    if q == 1:
        return p
    if q == 0:
        return r
    return p * q


def phi4(alphabet: Alphabet) -> FiniteInterpretation:
    """T is 1, F is 0, a_i is i+1; other antecedents multiply the left."""
    return FiniteInterpretation("Phi4", "integers", alphabet, 1, 0,
                                _numbered(alphabet, 1), _phi4_cond)


def phi_contr(alphabet: Alphabet) -> FiniteInterpretation:
    """T is 1, F is 0, a_i is i+1; the conditional is ``q*p + (1-q)*r``."""
    return FiniteInterpretation("PhiContr", "integers", alphabet, 1, 0,
                                _numbered(alphabet, 1), lambda p, q, r: q * p + (1 - q) * r)


INTERPRETATIONS: dict[str, Callable[[Alphabet], FiniteInterpretation]] = {
    "Phi1": phi1, "Phi2": phi2, "Phi3": phi3, "Phi4": phi4, "PhiContr": phi_contr,
}


def _alphabet(alphabet: Alphabet | Sequence[str] | str | None) -> Alphabet:
    if alphabet is None:
        return Alphabet(["a"])
    if isinstance(alphabet, Alphabet):
        return alphabet
    if isinstance(alphabet, str):
        return Alphabet.parse(alphabet)
    return Alphabet(alphabet)


def build_interpretation(model_id: str, alphabet=None) -> FiniteInterpretation:
    for key, builder in INTERPRETATIONS.items():
        if key.lower() == model_id.lower():
            return builder(_alphabet(alphabet))
    raise KeyError(f"unknown interpretation {model_id!r}; expected one of {', '.join(INTERPRETATIONS)}")


def _eval(m: FiniteInterpretation, t: Term, env: Mapping[str, Value]) -> Value:
    match t:
        case TrueC():
            return m.true
        case FalseC():
            return m.false
        case Atom(name):
            if name not in m.atoms:
                raise AlphabetError(f"atom {name!r} not in alphabet {m.alphabet}")
            return m.atoms[name]
        case Var(name):
            if name not in env:
                raise OpenTermError(f"cannot interpret variable {name}")
            return env[name]
        case Cond(left, ante, right):
            return m.cond(_eval(m, left, env), _eval(m, ante, env), _eval(m, right, env))
    raise TypeError(t)


def interpret(m: FiniteInterpretation, p: Term | str) -> Value:
    """Value of a closed term, computed bottom-up."""
    if isinstance(p, str):
        p = parse_term(p, m.alphabet)
    return _eval(m, p, {})


@dataclass(frozen=True)
class Instance:
    """An axiom instance: metavariable choices and the two closed sides."""

    mapping: Mapping[str, Term]
    lhs: Term
    rhs: Term

    def format(self) -> str:
        return f"{print_term(self.lhs)} = {print_term(self.rhs)}"


@dataclass(frozen=True)
class InstanceCheck:
    axiom: str
    bound: int
    checked: int
    counterexample: Instance | None = None
    values: tuple[Value, Value] | None = None

    @property
    def holds(self) -> bool:
        return self.counterexample is None


def _pool(alphabet: Alphabet, k: int) -> list[Term]:
    count = {1: len(alphabet) + 2}
    for n in range(3, k + 1, 2):
        count[n] = sum(count[i] * count[j] * count[n - i - j]
                       for i in range(1, n - 1, 2) for j in range(1, n - i, 2))
    total = sum(count.values())
    if total > MAX_POOL:
        raise SizeGuardError(f"{total} pool terms at bound {k} exceed the guard of {MAX_POOL}")
    return enumerate_terms(leaf_pool(list(alphabet)), k)


def check_axiom_instances(m: FiniteInterpretation, axiom: str | Axiom, k: int = DEFAULT_BOUND,
                          alphabet=None) -> InstanceCheck:
    """Check every instance with closed terms of size at most ``k``.

    Terms with the same value are interchangeable, so each value is tried
    once, represented by the first pool term that realises it.  The schema
    atom ranges over the alphabet.
    """
    if not isinstance(axiom, Axiom):
        axiom = lookup_axiom(axiom)
    if alphabet is not None:
        alpha = _alphabet(alphabet)
        if tuple(alpha) != tuple(m.alphabet):
            m = build_interpretation(m.id, alpha)
    representatives: dict[Value, Term] = {}
    for t in _pool(m.alphabet, k):
        representatives.setdefault(interpret(m, t), t)
    metas = axiom.metavars
    atoms = list(m.alphabet) if axiom.has_atom else [None]
    combos = len(representatives) ** len(metas) * len(atoms)
    if combos > MAX_COMBINATIONS:
        raise SizeGuardError(f"{combos} instances of {axiom.id} exceed the guard of {MAX_COMBINATIONS}")
    checked = 0
    for values in itertools.product(representatives, repeat=len(metas)):
        env = dict(zip(metas, values))
        for atom in atoms:
            if atom is not None:
                env[ATOM_META] = m.atoms[atom]
            left, right = _eval(m, axiom.lhs, env), _eval(m, axiom.rhs, env)
            checked += 1
            if left != right:
                mapping = {name: representatives[v] for name, v in zip(metas, values)}
                if atom is not None:
                    mapping[ATOM_META] = Atom(atom)
                lhs, rhs = axiom.instantiate(mapping)
                return InstanceCheck(axiom.id, k, checked, Instance(mapping, lhs, rhs), (left, right))
    return InstanceCheck(axiom.id, k, checked)


# Valuation witnesses --------------------------------------------------------


def _table(variety: SemVariety, alphabet: Alphabet, depth: int,
           rule: Callable[[tuple[str, ...], str], bool]) -> Valuation:
    hists = canonical_histories(variety, alphabet, depth)
    return Valuation(variety, alphabet, depth, {h: {a: rule(h, a) for a in alphabet} for h in hists})


def _first_then(first: bool):
    """``a`` yields ``first`` on its first evaluation and the opposite later."""
    return lambda h, a: first if a not in h else not first


@dataclass(frozen=True)
class ValuationWitness:
    valuation: Valuation
    lhs: Term
    rhs: Term

    def results(self) -> tuple[tuple[bool, tuple[str, ...]], tuple[bool, tuple[str, ...]]]:
        return run(self.lhs, self.valuation), run(self.rhs, self.valuation)


def _witness(variety: SemVariety, first: bool, lhs: str, rhs: str) -> ValuationWitness:
    alphabet = Alphabet(["a"])
    v = _table(variety, alphabet, 5, _first_then(first))
    return ValuationWitness(v, parse_term(lhs), parse_term(rhs))


def rp1_witness() -> ValuationWitness:
    return _witness(SemVariety.RP1, True, "(T <| a |> F) <| a |> F", "(T <| a |> T) <| a |> F")


def rp2_witness() -> ValuationWitness:
    return _witness(SemVariety.RP2, False, "F <| a |> (T <| a |> F)", "F <| a |> (F <| a |> F)")


def cr1_witness() -> ValuationWitness:
    return _witness(SemVariety.CR1, True, "(T <| a |> F) <| a |> T", "T <| a |> T")


def cr2_witness() -> ValuationWitness:
    return _witness(SemVariety.CR2, False, "F <| a |> (T <| a |> F)", "F <| a |> F")


_STATCOUNTER_TABLE = {
    (): {"a": False, "b": True},
    ("a",): {"a": False, "b": True},
    ("b",): {"a": True, "b": True},
    ("a", "b"): {"a": False, "b": True},
    ("b", "a"): {"a": True, "b": True},
}


def statcounter_witness() -> tuple[Valuation, Term, Term]:
    """A StatCounter table with ``a`` F, ``b`` T, and both T after the other.

    Cells at ``a.b`` and ``b.a`` that the instance never reads are filled so
    that repeating an atom leaves its yield unchanged.
    """
    v = Valuation(SemVariety.STATCOUNTER, Alphabet(["a", "b"]), 2, _STATCOUNTER_TABLE)
    lhs = parse_term("(F <| a |> T) <| b |> F")
    rhs = parse_term("(F <| b |> F) <| a |> (T <| b |> F)")
    return v, lhs, rhs


def stable_antecedents(v: Valuation, terms: Sequence[Term]) -> bool:
    """Every antecedent ``Q`` satisfies the StatCounter laws at the start state.

    The laws are ``Q/dQ(H) = Q/H`` and ``dQ(dQ(H)) = dQ(H)``.
    """
    for t in terms:
        for q in {s.ante for s in subterms(t) if isinstance(s, Cond)}:
            b1, h1 = run(q, v)
            b2, h2 = run(q, v, h1)
            if b1 != b2 or state_key(v.variety, h1, v.alphabet) != state_key(v.variety, h2, v.alphabet):
                return False
    return True


def check_on_valuation(v: Valuation, axiom: str | Axiom, k: int = DEFAULT_BOUND) -> InstanceCheck:
    """Every pool instance of ``axiom`` against one explicit valuation."""
    if not isinstance(axiom, Axiom):
        axiom = lookup_axiom(axiom)
    pool = _pool(v.alphabet, k)
    metas = axiom.metavars
    atoms = list(v.alphabet) if axiom.has_atom else [None]
    combos = len(pool) ** len(metas) * len(atoms)
    if combos > MAX_COMBINATIONS:
        raise SizeGuardError(f"{combos} instances of {axiom.id} exceed the guard of {MAX_COMBINATIONS}")
    checked = 0
    for terms in itertools.product(pool, repeat=len(metas)):
        mapping: dict[str, Term] = dict(zip(metas, terms))
        for atom in atoms:
            if atom is not None:
                mapping[ATOM_META] = Atom(atom)
            lhs, rhs = axiom.instantiate(mapping)
            left, right = run(lhs, v), run(rhs, v)
            checked += 1
            if left[0] != right[0] or (state_key(v.variety, left[1], v.alphabet)
                                       != state_key(v.variety, right[1], v.alphabet)):
                return InstanceCheck(axiom.id, k, checked, Instance(dict(mapping), lhs, rhs),
                                     (left[0], right[0]))
    return InstanceCheck(axiom.id, k, checked)


def check_variety_instances(variety: SemVariety, axiom: str | Axiom, k: int = DEFAULT_BOUND,
                            alphabet=None, samples: int = DEFAULT_SAMPLES,
                            seed: int = 0) -> InstanceCheck:
    """Sampled pool instances, each checked against every lawful valuation.

    Under StatCounter a CPcontr instance is only judged on valuations where
    its repeated antecedent obeys the variety's laws.
    """
    if not isinstance(axiom, Axiom):
        axiom = lookup_axiom(axiom)
    alpha = _alphabet(alphabet)
    pool = _pool(alpha, k)
    rng = random.Random(seed)
    for i in range(samples):
        mapping: dict[str, Term] = {name: rng.choice(pool) for name in axiom.metavars}
        if axiom.has_atom:
            mapping[ATOM_META] = Atom(rng.choice(list(alpha)))
        lhs, rhs = axiom.instantiate(mapping)
        premise = [mapping["Y"]] if variety is SemVariety.STATCOUNTER and axiom.id == "CPcontr" else []
        sep = find_separation(variety, lhs, rhs, alpha, premise=premise)
        if sep is not None:
            return InstanceCheck(axiom.id, k, i + 1, Instance(mapping, lhs, rhs),
                                 (sep.left[0], sep.right[0]))
    return InstanceCheck(axiom.id, k, samples)


# Reports -------------------------------------------------------------------

OPEN = {("CPcr", "CP4"), ("CPst", "CP1"), ("CPst", "CP4")}

_MODEL_FOR = {
    "CP1": "Phi1", "CP2": "Phi2", "CP3": "Phi3", "CP4": "Phi4",
    "CPrp1": "rp1", "CPrp2": "rp2", "CPcr1": "cr1", "CPcr2": "cr2",
    "CPstat": "statcounter", "CPcontr": "PhiContr",
}

_VALUATION_WITNESSES: dict[str, Callable[[], ValuationWitness]] = {
    "rp1": rp1_witness, "rp2": rp2_witness, "cr1": cr1_witness, "cr2": cr2_witness,
}

# Instances on which each finite interpretation visibly breaks its target.
_INTERPRETATION_WITNESSES = {
    "Phi1": ("F <| T |> F", "F"),
    "Phi2": ("T <| F |> T", "T"),
    "Phi3": ("T <| {a} |> F", "{a}"),
    "Phi4": ("T <| (F <| {a} |> T) |> T", "(T <| F |> T) <| {a} |> (T <| T |> T)"),
    "PhiContr": ("(T <| {a} |> F) <| {a} |> F", "T <| {a} |> F"),
}


def interpretation_witness(m: FiniteInterpretation) -> tuple[Term, Term]:
    """The standard failing instance for ``m``, built on its first atom."""
    first = next(iter(m.alphabet))
    lhs, rhs = _INTERPRETATION_WITNESSES[m.id]
    return (parse_term(lhs.format(a=first), m.alphabet), parse_term(rhs.format(a=first), m.alphabet))


@dataclass(frozen=True)
class Witness:
    lhs: Term
    rhs: Term
    lhs_value: str
    rhs_value: str
    valuation: Valuation | None = None

    @property
    def fails(self) -> bool:
        return self.lhs_value != self.rhs_value


@dataclass(frozen=True)
class IndependenceReport:
    axiom_set: str
    target: str
    model: str
    bound: int
    alphabet: Alphabet
    verdicts: tuple[InstanceCheck, ...]
    witness: Witness
    notes: tuple[str, ...] = field(default=())

    def verdict(self, axiom: str) -> InstanceCheck:
        return next(v for v in self.verdicts if v.axiom == axiom)

    @property
    def valid(self) -> bool:
        target_fails = not self.verdict(self.target).holds and self.witness.fails
        others_hold = all(v.holds for v in self.verdicts if v.axiom != self.target)
        return target_fails and others_hold

    def format(self) -> list[str]:
        lines = [
            f"set {self.axiom_set}",
            f"target {self.target}",
            f"model {self.model}",
            f"bound {self.bound}",
            f"alphabet {self.alphabet}",
        ]
        for v in self.verdicts:
            state = "holds" if v.holds else "fails"
            noun = "instance" if v.checked == 1 else "instances"
            lines.append(f"verdict {v.axiom} {state} ({v.checked} {noun})")
            if not v.holds:
                lines.append(f"  instance {v.counterexample.format()}")
        w = self.witness
        lines.append(f"witness {print_term(w.lhs)} = {print_term(w.rhs)}")
        lines.append(f"  values {w.lhs_value} {'!=' if w.fails else '='} {w.rhs_value}")
        if w.valuation is not None:
            lines.append("  valuation")
            lines.extend("    " + line for line in print_valuation(w.valuation).splitlines())
        lines.extend(f"note {n}" for n in self.notes)
        lines.append("result " + ("VALID" if self.valid else "INVALID"))
        return lines


def _show_bool(b: bool) -> str:
    return "T" if b else "F"


def independence_report(axiom_set: str, target: str, k: int = DEFAULT_BOUND, alphabet=None, *,
                        samples: int = DEFAULT_SAMPLES, trials: int = DEFAULT_TRIALS,
                        seed: int = 0) -> IndependenceReport:
    """Check that the chosen model satisfies the rest of ``axiom_set`` and not ``target``.

    Raises ``UnresolvedIndependence`` for CP4 in CPcr and for CP1 and CP4
    in CPst, where no countermodel is known.
    """
    set_id = lookup_set(axiom_set)
    target_id = lookup_axiom(target).id
    members = AXIOM_SETS[set_id]
    if target_id not in members:
        raise KeyError(f"{target_id} is not an axiom of {set_id}")
    if (set_id, target_id) in OPEN:
        raise UnresolvedIndependence(f"no known countermodel for {target_id} in {set_id}")
    model = _MODEL_FOR[target_id]
    alpha = _alphabet(alphabet)

    if model in INTERPRETATIONS:
        m = build_interpretation(model, alpha)
        verdicts = tuple(check_axiom_instances(m, ax, k) for ax in members)
        lhs, rhs = interpretation_witness(m)
        witness = Witness(lhs, rhs, m.show(interpret(m, lhs)), m.show(interpret(m, rhs)))
        return IndependenceReport(set_id, target_id, model, k, alpha, verdicts, witness)

    variety = SemVariety.parse(model)
    if variety is SemVariety.STATCOUNTER:
        v, lhs, rhs = statcounter_witness()
        alpha = Alphabet(dict.fromkeys([*alpha, *v.alphabet]))
    else:
        w = _VALUATION_WITNESSES[model]()
        v, lhs, rhs = w.valuation, w.lhs, w.rhs
    notes = []
    verdicts = []
    for ax in members:
        if ax == target_id:
            verdicts.append(InstanceCheck(ax, k, 1, Instance({}, lhs, rhs),
                                          (run(lhs, v)[0], run(rhs, v)[0])))
            continue
        check = check_variety_instances(variety, ax, k, alpha, samples, seed)
        sampled = check_axiom_soundness(variety, ax, trials, seed, alpha)
        if check.holds and not sampled.holds:
            ce = sampled.counterexample
            check = InstanceCheck(ax, k, check.checked, Instance({}, ce.lhs, ce.rhs),
                                  (ce.lhs_result[0], ce.rhs_result[0]))
        verdicts.append(check)
    notes.append(f"{trials} random instances per non-target axiom also checked on random valuations")
    lhs_val, rhs_val = run(lhs, v), run(rhs, v)
    lawful = check_constraints(v)
    if variety is SemVariety.STATCOUNTER:
        lawful = lawful and stable_antecedents(v, [lhs, rhs])
    if not lawful:
        notes.append("witness valuation breaks the variety laws")
        witness = Witness(lhs, rhs, "?", "?", v)
    else:
        witness = Witness(lhs, rhs, _show_bool(lhs_val[0]), _show_bool(rhs_val[0]), v)
    return IndependenceReport(set_id, target_id, variety.value, k, alpha, tuple(verdicts), witness,
                              tuple(notes))


def all_reports(k: int = DEFAULT_BOUND, alphabet=None, **kwargs) -> list[IndependenceReport]:
    """Every resolved (set, target) pair, in set order."""
    return [independence_report(s, t, k, alphabet, **kwargs)
            for s, members in AXIOM_SETS.items() for t in members if (s, t) not in OPEN]


__all__ = [
    "FiniteInterpretation", "INTERPRETATIONS", "InstanceCheck", "Instance", "IndependenceReport",
    "ValuationWitness", "Witness", "OPEN", "all_reports", "build_interpretation", "check_axiom_instances",
    "check_on_valuation", "check_variety_instances", "cr1_witness", "cr2_witness", "independence_report",
    "interpret", "interpretation_witness", "phi1", "phi2", "phi3", "phi4", "phi_contr", "rp1_witness",
    "rp2_witness", "stable_antecedents", "statcounter_witness"
]
