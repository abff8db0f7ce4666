"""Concrete syntax for terms, Boolean terms and valuation files.

Term grammar, loosest binding first::

    seq     := cond (";" cond)*                       left-associative
    cond    := biimp ["<|" biimp "|>" biimp]          non-associative
    biimp   := imp [("<->" | ">-<") imp]
    imp     := or [("->" | "<-") or]
    or      := and (("or>" | "<or") and)*
    and     := unary (("&>" | "<&") unary)*
    unary   := "~" unary | primary
    primary := "T" | "F" | atom | Var | "(" seq ")"

A conditional nested directly inside another conditional must be
parenthesised.  Sugar is expanded while parsing; the printer emits only
the core ``<| |>`` form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable

from .boolean import And, AtomB, BATerm, FalseB, Not, Or, TrueB, VarB
from .errors import AlphabetError, ParseError, SourceSpan
from .terms import (ATOM_RE, Alphabet, Atom, Cond, Connective, F, FalseC, T, Term,
                    TrueC, Var, apply_connective, negate, seq_compose)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.start, self.end)


_TERM_TOKENS = [
    ("WS", r"\s+"),
    ("BIIMP_L", r"<->"),
    ("BIIMP_R", r">-<"),
    ("LCOND", r"<\|"),
    ("RCOND", r"\|>"),
    ("AND_R", r"<&"),
    ("AND_L", r"&>"),
    ("OR_R", r"<or(?![A-Za-z0-9_])"),
    ("OR_L", r"or>"),
    ("IMP_L", r"->"),
    ("IMP_R", r"<-"),
    ("NOT", r"~"),
    ("SEQ", r";"),
    ("LPAREN", r"\("),
    ("RPAREN", r"\)"),
    ("IDENT", r"[A-Za-z][A-Za-z0-9_]*"),
]

_BA_TOKENS = [
    ("WS", r"\s+"),
    ("NOT", r"!"),
    ("AND", r"&"),
    ("OR", r"\|"),
    ("LPAREN", r"\("),
    ("RPAREN", r"\)"),
    ("IDENT", r"[A-Za-z][A-Za-z0-9_]*"),
]


def _lexer(spec):
    pattern = re.compile("|".join(f"(?P<{k}>{p})" for k, p in spec))

    def tokenize(text: str) -> list[Token]:
        out, pos = [], 0
        while pos < len(text):
            m = pattern.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r}", SourceSpan(pos, pos + 1), text)
            if m.lastgroup != "WS":
                out.append(Token(m.lastgroup, m.group(), m.start(), m.end()))
            pos = m.end()
        out.append(Token("EOF", "", len(text), len(text)))
        return out

    return tokenize


_tokenize_term = _lexer(_TERM_TOKENS)
_tokenize_ba = _lexer(_BA_TOKENS)


class _Cursor:
    def __init__(self, text: str, tokens: list[Token]):
        self.text = text
        self.tokens = tokens
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        if self.peek.kind != kind:
            self.fail(f"expected {what}", self.peek)
        return self.take()

    def fail(self, message: str, tok: Token):
        found = "end of input" if tok.kind == "EOF" else repr(tok.text)
        raise ParseError(f"{message}, found {found}", tok.span, self.text)


def _identifier(cur: _Cursor, tok: Token, atom, var, true, false, alphabet):
    name = tok.text
    if name == "T":
        return true
    if name == "F":
        return false
    if name[0].isupper():
        return var(name)
    if not ATOM_RE.match(name):
        raise ParseError(f"atom {name!r} must be lowercase", tok.span, cur.text)
    if alphabet is not None and name not in alphabet:
        raise AlphabetError(f"atom {name!r} not in alphabet {alphabet}", tok.span)
    return atom(name)


_BINARY = {
    "AND_L": Connective.LEFT_AND,
    "AND_R": Connective.RIGHT_AND,
    "OR_L": Connective.LEFT_OR,
    "OR_R": Connective.RIGHT_OR,
    "IMP_L": Connective.LEFT_IMP,
    "IMP_R": Connective.RIGHT_IMP,
    "BIIMP_L": Connective.LEFT_BIIMP,
    "BIIMP_R": Connective.RIGHT_BIIMP,
}


class _TermParser:
    def __init__(self, text: str, alphabet: Alphabet | None):
        self.cur = _Cursor(text, _tokenize_term(text))
        self.alphabet = alphabet

    def parse(self) -> Term:
        t = self.seq()
        tok = self.cur.peek
        if tok.kind == "LCOND":
            self.cur.fail("conditional composition is non-associative; parenthesise the nested conditional", tok)
        if tok.kind != "EOF":
            self.cur.fail("expected end of input", tok)
        return t

    def seq(self) -> Term:
        t = self.cond()
        while self.cur.peek.kind == "SEQ":
            self.cur.take()
            t = seq_compose(t, self.cond())
        return t

    def cond(self) -> Term:
        left = self.biimp()
        if self.cur.peek.kind != "LCOND":
            return left
        self.cur.take()
        ante = self.biimp()
        if self.cur.peek.kind == "LCOND":
            self.cur.fail("conditional composition is non-associative; parenthesise the nested conditional",
                          self.cur.peek)
        self.cur.expect("RCOND", "'|>'")
        right = self.biimp()
        return Cond(left, ante, right)

    def _binary(self, kinds: tuple[str, ...], operand: Callable[[], Term], assoc: bool) -> Term:
        t = operand()
        while self.cur.peek.kind in kinds:
            tok = self.cur.take()
            t = apply_connective(_BINARY[tok.kind], t, operand())
            if not assoc and self.cur.peek.kind in kinds:
                self.cur.fail(f"operator {tok.text!r} is non-associative; add parentheses", self.cur.peek)
        return t

    def biimp(self) -> Term:
        return self._binary(("BIIMP_L", "BIIMP_R"), self.imp, assoc=False)

    def imp(self) -> Term:
        return self._binary(("IMP_L", "IMP_R"), self.disj, assoc=False)

    def disj(self) -> Term:
        return self._binary(("OR_L", "OR_R"), self.conj, assoc=True)

    def conj(self) -> Term:
        return self._binary(("AND_L", "AND_R"), self.unary, assoc=True)

    def unary(self) -> Term:
        if self.cur.peek.kind == "NOT":
            self.cur.take()
            return negate(self.unary())
        return self.primary()

    def primary(self) -> Term:
        tok = self.cur.peek
        if tok.kind == "IDENT":
            self.cur.take()
            return _identifier(self.cur, tok, Atom, Var, T, F, self.alphabet)
        if tok.kind == "LPAREN":
            self.cur.take()
            t = self.seq()
            self.cur.expect("RPAREN", "')'")
            return t
        self.cur.fail("expected a term", tok)


def parse_term(text: str, alphabet: Alphabet | Iterable[str] | None = None) -> Term:
    if alphabet is not None and not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(alphabet)
    return _TermParser(text, alphabet).parse()


def print_term(t: Term) -> str:
    parts: list[str] = []

    def emit(s: Term, nested: bool):
        match s:
            case TrueC():
                parts.append("T")
            case FalseC():
                parts.append("F")
            case Atom(name) | Var(name):
                parts.append(name)
            case Cond(left, ante, right):
                if nested:
                    parts.append("(")
                emit(left, True)
                parts.append(" <| ")
                emit(ante, True)
                parts.append(" |> ")
                emit(right, True)
                if nested:
                    parts.append(")")

    emit(t, False)
    return "".join(parts)


class _BAParser:
    def __init__(self, text: str):
        self.cur = _Cursor(text, _tokenize_ba(text))

    def parse(self) -> BATerm:
        t = self.disj()
        if self.cur.peek.kind != "EOF":
            self.cur.fail("expected end of input", self.cur.peek)
        return t

    def disj(self) -> BATerm:
        t = self.conj()
        while self.cur.peek.kind == "OR":
            self.cur.take()
            t = Or(t, self.conj())
        return t

    def conj(self) -> BATerm:
        t = self.unary()
        while self.cur.peek.kind == "AND":
            self.cur.take()
            t = And(t, self.unary())
        return t

    def unary(self) -> BATerm:
        if self.cur.peek.kind == "NOT":
            self.cur.take()
            return Not(self.unary())
        tok = self.cur.peek
        if tok.kind == "IDENT":
            self.cur.take()
            return _identifier(self.cur, tok, AtomB, VarB, TrueB(), FalseB(), None)
        if tok.kind == "LPAREN":
            self.cur.take()
            t = self.disj()
            self.cur.expect("RPAREN", "')'")
            return t
        self.cur.fail("expected a Boolean term", tok)


def parse_ba(text: str) -> BATerm:
    return _BAParser(text).parse()


_BA_PREC = {Or: 1, And: 2}


def print_ba(t: BATerm) -> str:
    def go(s: BATerm, min_prec: int) -> str:
        match s:
            case TrueB():
                return "T"
            case FalseB():
                return "F"
            case AtomB(name) | VarB(name):
                return name
            case Not(arg):
                return "!" + go(arg, 3)
            case And(l, r) | Or(l, r):
                prec = _BA_PREC[type(s)]
                op = " & " if prec == 2 else " | "
                text = go(l, prec) + op + go(r, prec + 1)
                return f"({text})" if prec < min_prec else text
        raise TypeError(s)

    return go(t, 0)


# Valuation files ---------------------------------------------------------


def format_history(h: tuple[str, ...]) -> str:
    return ".".join(h) if h else "eps"


def parse_history(text: str) -> tuple[str, ...]:
    text = text.strip()
    if text in ("eps", ""):
        return ()
    return tuple(text.split("."))


def parse_valuation(text: str):
    """Read a valuation file; unlisted cells default to 0.

    Raises ParseError for malformed lines and for tables that break the
    constraints of the declared variety.
    """
    from .valuations import SemVariety, Special, Valuation, canonicalize, constraint_violations

    variety = alphabet = depth = special = None
    entries: list[tuple[tuple[str, ...], dict[str, bool], SourceSpan]] = []
    offset = 0
    for raw in text.splitlines(keepends=True):
        line = raw.split("#", 1)[0].rstrip("\r\n")
        span = SourceSpan(offset, offset + len(line))
        offset += len(raw)
        if not line.strip():
            continue
        head, _, rest = line.strip().partition(" ")
        try:
            if head == "variety":
                variety = SemVariety.parse(rest.strip())
            elif head == "alphabet":
                alphabet = Alphabet.parse(rest)
            elif head == "depth":
                depth = int(rest)
                if depth < 0:
                    raise ValueError("depth must be non-negative")
            elif head == "special":
                special = Special.parse(rest.strip())
            elif line.strip().startswith("@"):
                hist_text, sep, cells = line.strip()[1:].partition(":")
                if not sep:
                    raise ValueError("expected ':' after the history")
                values = {}
                for cell in cells.split():
                    name, eq, bit = cell.partition("=")
                    if not eq or bit not in ("0", "1"):
                        raise ValueError(f"bad cell {cell!r}; expected atom=0 or atom=1")
                    values[name] = bit == "1"
                entries.append((parse_history(hist_text), values, span))
            else:
                raise ValueError(f"unknown directive {head!r}")
        except (ValueError, AlphabetError) as exc:
            raise ParseError(str(exc), span, text) from None

    end = SourceSpan(len(text), len(text))
    if variety is None or alphabet is None:
        raise ParseError("valuation file needs 'variety' and 'alphabet' headers", end, text)
    if depth is None:
        depth = 0
    if special is not None:
        return Valuation.constant(variety, alphabet, special)

    valuation = Valuation.blank(variety, alphabet, depth)
    table = {h: dict(cells) for h, cells in valuation.table.items()}
    origin: dict[tuple[str, ...], SourceSpan] = {}
    seen: dict[tuple[tuple[str, ...], str], bool] = {}
    for hist, values, span in entries:
        for name in hist + tuple(values):
            if name not in alphabet:
                raise ParseError(f"atom {name!r} not in alphabet {alphabet}", span, text)
        canon = canonicalize(variety, hist)
        if canon not in table:
            raise ParseError(f"history {format_history(hist)} exceeds depth {depth}", span, text)
        for name, bit in values.items():
            if seen.setdefault((canon, name), bit) != bit:
                raise ParseError(f"conflicting values for {name} at {format_history(canon)}", span, text)
            table[canon][name] = bit
        origin.setdefault(canon, span)
    valuation = Valuation(variety, alphabet, depth, table)
    problems = constraint_violations(valuation)
    if problems:
        hist, message = problems[0]
        raise ParseError(f"table violates {variety.value} constraints: {message}",
                         origin.get(hist, end), text)
    return valuation


def print_valuation(v) -> str:
    lines = [f"variety {v.variety.value}", f"alphabet {' '.join(v.alphabet)}", f"depth {v.depth}"]
    if v.special is not None:
        lines.append(f"special {v.special.value}")
    else:
        for hist in sorted(v.table, key=lambda h: (len(h), h)):
            cells = " ".join(f"{a}={int(v.table[hist][a])}" for a in v.alphabet)
            lines.append(f"@{format_history(hist)} : {cells}")
    return "\n".join(lines) + "\n"
