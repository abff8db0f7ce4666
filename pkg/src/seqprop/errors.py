"""Exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


class SeqPropError(Exception):
    """Base class for every error raised by seqprop."""


@dataclass(frozen=True)
class SourceSpan:
    """Half-open byte range ``[start, end)`` into a parsed input string."""

    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start <= self.end:
            raise ValueError(f"bad span {self.start}..{self.end}")

    def render(self, text: str) -> str:
        """Two-line caret diagram pointing at the span inside ``text``."""
        line_start = text.rfind("\n", 0, self.start) + 1
        line_end = text.find("\n", self.start)
        if line_end == -1:
            line_end = len(text)
        width = max(1, min(self.end, line_end) - self.start)
        return text[line_start:line_end] + "\n" + " " * (self.start - line_start) + "^" * width


class ParseError(SeqPropError):
    def __init__(self, message: str, span: SourceSpan, text: str = ""):
        super().__init__(message)
        self.message = message
        self.span = span
        self.text = text

    def __str__(self):
        head = f"{self.message} at {self.span.start}..{self.span.end}"
        if self.text:
            return head + "\n" + self.span.render(self.text)
        return head


class AlphabetError(SeqPropError):
    """An atom outside the active alphabet, or a malformed alphabet."""

    def __init__(self, message: str, span: SourceSpan | None = None):
        super().__init__(message)
        self.span = span


class OpenTermError(SeqPropError):
    """An operation that needs a closed term received one with variables."""


class DepthExceeded(SeqPropError):
    """Evaluation needed a history longer than the valuation's depth bound."""


class SizeGuardError(SeqPropError):
    """An exhaustive enumeration was requested beyond its size guard."""


class UnresolvedIndependence(SeqPropError):
    """The requested independence claim has no known countermodel."""
