"""Conditional composition terms, reactive valuations and their varieties."""

from .axioms import AXIOM_SETS, AXIOMS, Axiom, lookup_axiom
from .basic_forms import Variety, decide, is_basic_form, to_basic_form, to_bf_cr, to_bf_rp, to_bf_st
from .boolean import BA_AXIOMS, ba_equal, decide_st_via_ba, from_ba, to_ba
from .errors import (AlphabetError, DepthExceeded, OpenTermError, ParseError, SeqPropError,
                     SizeGuardError, SourceSpan, UnresolvedIndependence)
from .independence import (FiniteInterpretation, IndependenceReport, check_axiom_instances,
                           independence_report, interpret, statcounter_witness)
from .rewrite import critical_pairs, normal_form, normalize, prove_equal_cp
from .syntax import parse_ba, parse_term, parse_valuation, print_ba, print_term, print_valuation
from .terms import Alphabet, Atom, Cond, Connective, F, T, Term, Var, apply_connective, size
from .valuations import (SemVariety, Valuation, check_axiom_soundness, congruent_oracle, derivative,
                         evaluate, yield_of)

__version__ = "0.1.0"

__all__ = [
    "AXIOMS", "AXIOM_SETS", "Axiom", "lookup_axiom",
    "Variety", "decide", "is_basic_form", "to_basic_form", "to_bf_cr", "to_bf_rp", "to_bf_st",
    "BA_AXIOMS", "ba_equal", "decide_st_via_ba", "from_ba", "to_ba",
    "AlphabetError", "DepthExceeded", "OpenTermError", "ParseError", "SeqPropError",
    "SizeGuardError", "SourceSpan", "UnresolvedIndependence",
    "FiniteInterpretation", "IndependenceReport", "check_axiom_instances", "independence_report",
    "interpret", "statcounter_witness",
    "critical_pairs", "normal_form", "normalize", "prove_equal_cp",
    "parse_ba", "parse_term", "parse_valuation", "print_ba", "print_term", "print_valuation",
    "Alphabet", "Atom", "Cond", "Connective", "F", "T", "Term", "Var", "apply_connective", "size",
    "SemVariety", "Valuation", "check_axiom_soundness", "congruent_oracle", "derivative",
    "evaluate", "yield_of",
]
