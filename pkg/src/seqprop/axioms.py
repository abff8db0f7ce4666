"""Equation schemas for the conditional-composition axioms.

Metavariables are ``Var`` nodes.  The name ``A`` is reserved for schemas
that quantify over atoms only; it must be instantiated with an atom.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .terms import Cond, F, T, Term, Var, substitute, vars_of

ATOM_META = "A"


@dataclass(frozen=True)
class Axiom:
    id: str
    lhs: Term
    rhs: Term

    @property
    def metavars(self) -> list[str]:
        names = dict.fromkeys(vars_of(self.lhs) + vars_of(self.rhs))
        return [n for n in names if n != ATOM_META]

    @property
    def has_atom(self) -> bool:
        return ATOM_META in vars_of(self.lhs)

    def instantiate(self, mapping: Mapping[str, Term]) -> tuple[Term, Term]:
        return substitute(self.lhs, mapping), substitute(self.rhs, mapping)


def _c(l, a, r):
    return Cond(l, a, r)


def _schemas() -> dict[str, Axiom]:
    x, y, z, u, v, w = (Var(n) for n in ("X", "Y", "Z", "U", "V", "W"))
    a = Var(ATOM_META)
    eqs = [
        ("CP1", _c(x, T, y), x),
        ("CP2", _c(x, F, y), y),
        ("CP3", _c(T, x, F), x),
        ("CP4", _c(x, _c(y, z, u), v), _c(_c(x, y, v), z, _c(x, u, v))),
        ("CPrp1", _c(_c(x, a, y), a, z), _c(_c(x, a, x), a, z)),
        ("CPrp2", _c(x, a, _c(y, a, z)), _c(x, a, _c(z, a, z))),
        ("CPcr1", _c(_c(x, a, y), a, z), _c(x, a, z)),
        ("CPcr2", _c(x, a, _c(y, a, z)), _c(x, a, z)),
        ("CPstat", _c(_c(x, y, z), u, v), _c(_c(x, u, v), y, _c(z, u, v))),
        ("CPcontr", _c(_c(x, y, z), y, u), _c(x, y, u)),
        ("CP5", _c(x, y, _c(z, u, _c(v, y, w))), _c(x, y, _c(z, u, w))),
    ]
    return {name: Axiom(name, lhs, rhs) for name, lhs, rhs in eqs}


AXIOMS: dict[str, Axiom] = _schemas()

AXIOM_SETS: dict[str, tuple[str, ...]] = {
    "CP": ("CP1", "CP2", "CP3", "CP4"),
    "CPrp": ("CP1", "CP2", "CP3", "CP4", "CPrp1", "CPrp2"),
    "CPcr": ("CP1", "CP2", "CP3", "CP4", "CPcr1", "CPcr2"),
    "CPst": ("CP1", "CP2", "CP3", "CP4", "CPstat", "CPcontr"),
}


def lookup_axiom(name: str) -> Axiom:
    """Case-insensitive lookup, so ``cprp1`` and ``CPrp1`` both work."""
    for key, axiom in AXIOMS.items():
        if key.lower() == name.lower():
            return axiom
    raise KeyError(f"unknown axiom {name!r}; expected one of {', '.join(AXIOMS)}")


def lookup_set(name: str) -> str:
    for key in AXIOM_SETS:
        if key.lower() == name.lower():
            return key
    raise KeyError(f"unknown axiom set {name!r}; expected one of {', '.join(AXIOM_SETS)}")
