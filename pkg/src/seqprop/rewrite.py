"""The four-rule rewriting system for conditional composition.

    R1  x <| T |> y              ->  x
    R2  x <| F |> y              ->  y
    R3  T <| x |> F              ->  x
    R4  x <| (y <| z |> v) |> w  ->  (x <| y |> w) <| z |> (x <| v |> w)

The system terminates and is confluent, so equal normal forms decide
provable equality, for open terms as well.  ``norm`` drops strictly at
every contracted redex; ``weight`` drops strictly on every whole-term step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Literal

from .terms import CHILDREN, Cond, F, FalseC, Path, T, Term, TrueC, Var, norm, replace_at, subterm_at

Strategy = Literal["innermost", "outermost"]


@dataclass(frozen=True)
class RewriteRule:
    id: str
    lhs: Term
    rhs: Term


def _rules() -> tuple[RewriteRule, ...]:
    x, y, z, v, w = (Var(n) for n in "XYZVW")
    return (
        RewriteRule("R1", Cond(x, T, y), x),
        RewriteRule("R2", Cond(x, F, y), y),
        RewriteRule("R3", Cond(T, x, F), x),
        RewriteRule("R4", Cond(x, Cond(y, z, v), w), Cond(Cond(x, y, w), z, Cond(x, v, w))),
    )


RULES = _rules()


def match(pattern: Term, t: Term, binding: dict[str, Term] | None = None) -> dict[str, Term] | None:
    """Bind the pattern's variables so that it equals ``t``, or ``None``."""
    binding = {} if binding is None else binding
    if isinstance(pattern, Var):
        bound = binding.get(pattern.name)
        if bound is None:
            binding[pattern.name] = t
            return binding
        return binding if bound == t else None
    if isinstance(pattern, Cond):
        if not isinstance(t, Cond):
            return None
        for part in CHILDREN:
            if match(getattr(pattern, part), getattr(t, part), binding) is None:
                return None
        return binding
    return binding if pattern == t else None


def instantiate(pattern: Term, binding: dict[str, Term]) -> Term:
    if isinstance(pattern, Var):
        return binding[pattern.name]
    if isinstance(pattern, Cond):
        return Cond(instantiate(pattern.left, binding), instantiate(pattern.ante, binding),
                    instantiate(pattern.right, binding))
    return pattern


def apply_at_root(t: Term) -> tuple[Term, str] | None:
    """First rule (in R1..R4 order) whose left side matches ``t``."""
    for rule in RULES:
        binding = match(rule.lhs, t)
        if binding is not None:
            return instantiate(rule.rhs, binding), rule.id
    return None


def is_redex(t: Term) -> bool:
    if not isinstance(t, Cond):
        return False
    return (isinstance(t.ante, (TrueC, FalseC, Cond))
            or (isinstance(t.left, TrueC) and isinstance(t.right, FalseC)))


def _find(t: Term, path: Path, strategy: Strategy) -> Path | None:
    if strategy == "outermost" and is_redex(t):
        return path
    if isinstance(t, Cond):
        for part in CHILDREN:
            found = _find(getattr(t, part), path + (part,), strategy)
            if found is not None:
                return found
    if strategy == "innermost" and is_redex(t):
        return path
    return None


def redex_position(t: Term, strategy: Strategy = "innermost") -> Path | None:
    """Leftmost redex; innermost means no redex strictly inside it."""
    return _find(t, (), strategy)


@dataclass(frozen=True)
class TraceStep:
    rule: str
    path: Path
    term: Term

    def format(self, n: int) -> str:
        from .syntax import print_term

        where = ".".join(self.path) if self.path else "root"
        return f"step {n}: {self.rule} at {where} => {print_term(self.term)}"


@dataclass(frozen=True)
class NormalForm:
    term: Term
    trace: tuple[TraceStep, ...] = field(default=())

    def format_trace(self) -> list[str]:
        return [step.format(i) for i, step in enumerate(self.trace, 1)]


def rewrite_step(t: Term, strategy: Strategy = "innermost") -> tuple[Term, str, Path] | None:
    """One rewrite at the leftmost innermost (or outermost) redex."""
    path = redex_position(t, strategy)
    if path is None:
        return None
    new, rule = apply_at_root(subterm_at(t, path))
    return replace_at(t, path, new), rule, path


class NormNotDecreasing(AssertionError):
    pass


def weight(t: Term) -> int:
    """Strictly monotone termination measure.

    Leaves weigh 2 and ``w(l <| c |> r) = w(c)**2 * (w(l) + w(r))``.  Every
    rule lowers it at the root, and it grows strictly in each argument, so
    it drops on every step anywhere in a term.  ``norm`` only has the first
    property: a rewrite inside the lighter branch of a conditional can
    leave the ``max`` unchanged.
    """
    if isinstance(t, Cond):
        return weight(t.ante) ** 2 * (weight(t.left) + weight(t.right))
    return 2


def normal_form(t: Term, strategy: Strategy = "innermost", check_norm: bool = False) -> NormalForm:
    """Rewrite to the unique normal form, recording every step.

    With ``check_norm`` each step must lower the norm of the contracted
    redex, never raise the norm of the whole term, and lower ``weight``.
    """
    steps = []
    current = t
    while True:
        path = redex_position(current, strategy)
        if path is None:
            return NormalForm(current, tuple(steps))
        redex = subterm_at(current, path)
        contractum, rule = apply_at_root(redex)
        nxt = replace_at(current, path, contractum)
        if check_norm:
            _check_step(current, nxt, redex, contractum, rule, path)
        steps.append(TraceStep(rule, path, nxt))
        current = nxt


def _check_step(before, after, redex, contractum, rule, path):
    if norm(contractum) >= norm(redex):
        raise NormNotDecreasing(f"{rule} at {path} does not lower the redex norm")
    if norm(after) > norm(before):
        raise NormNotDecreasing(f"{rule} at {path} raised the term norm")
    if weight(after) >= weight(before):
        raise NormNotDecreasing(f"{rule} at {path} does not lower the weight")


def normalize(t: Term) -> Term:
    """Normal form without a trace, computed bottom-up."""
    if isinstance(t, Cond):
        return _reduce(normalize(t.left), normalize(t.ante), normalize(t.right))
    return t


@lru_cache(maxsize=1 << 16)
def _reduce(left: Term, ante: Term, right: Term) -> Term:
    """Normal form of ``left <| ante |> right`` for normal-form arguments."""
    if isinstance(ante, TrueC):
        return left
    if isinstance(ante, FalseC):
        return right
    if isinstance(ante, Cond):
        # A normal antecedent is never T, F or a conditional, so after
        # distributing, ``ante.ante`` heads the result.
        return _reduce(_reduce(left, ante.left, right), ante.ante, _reduce(left, ante.right, right))
    if isinstance(left, TrueC) and isinstance(right, FalseC):
        return ante
    return Cond(left, ante, right)


def prove_equal_cp(s: Term, t: Term) -> bool:
    """Provable equality from the four base axioms; open terms allowed."""
    return normalize(s) == normalize(t)


def join(u: Term, v: Term) -> bool:
    return normalize(u) == normalize(v)


@dataclass(frozen=True)
class CriticalPair:
    name: str
    peak: Term
    left: Term
    right: Term

    def joins(self) -> bool:
        return join(self.left, self.right)


def critical_pairs() -> list[CriticalPair]:
    """The seven overlaps of the rules, in the standard numbering mu1..mu7.

    Variables follow the rule they come from (``X1`` from R1, ``Y4`` from
    R4, and ``Y4p`` from a renamed copy of R4).
    """
    X1, Y1, X2, Y2, X3 = (Var(n) for n in ("X1", "Y1", "X2", "Y2", "X3"))
    X4, Y4, Z4, V4, W4 = (Var(n) for n in ("X4", "Y4", "Z4", "V4", "W4"))
    X4p, Y4p, Z4p, V4p, W4p = (Var(n) for n in ("X4p", "Y4p", "Z4p", "V4p", "W4p"))
    c = Cond
    return [
        CriticalPair("mu1", c(X4, c(X1, T, Y1), W4),
                     c(X4, X1, W4), c(c(X4, X1, W4), T, c(X4, Y1, W4))),
        CriticalPair("mu2", c(X4, c(X2, F, Y2), W4),
                     c(X4, Y2, W4), c(c(X4, X2, W4), F, c(X4, Y2, W4))),
        CriticalPair("mu3", c(X4, c(T, X3, F), W4),
                     c(X4, X3, W4), c(c(X4, T, W4), X3, c(X4, F, W4))),
        CriticalPair("mu4", c(T, T, F), T, T),
        CriticalPair("mu5", c(T, F, F), F, F),
        CriticalPair("mu6", c(T, c(Y4, Z4, V4), F),
                     c(Y4, Z4, V4), c(c(T, Y4, F), Z4, c(T, V4, F))),
        CriticalPair("mu7", c(X4, c(X4p, c(Y4p, Z4p, V4p), W4p), W4),
                     c(X4, c(c(X4p, Y4p, W4p), Z4p, c(X4p, V4p, W4p)), W4),
                     c(c(X4, X4p, W4), c(Y4p, Z4p, V4p), c(X4, W4p, W4))),
    ]


def all_steps(t: Term) -> Iterator[tuple[Term, str, Path]]:
    """Every single-step rewrite of ``t`` at any position."""
    stack: list[Path] = [()]
    while stack:
        path = stack.pop()
        sub = subterm_at(t, path)
        if isinstance(sub, Cond):
            for rule in RULES:
                binding = match(rule.lhs, sub)
                if binding is not None:
                    yield replace_at(t, path, instantiate(rule.rhs, binding)), rule.id, path
            stack.extend(path + (part,) for part in reversed(CHILDREN))
