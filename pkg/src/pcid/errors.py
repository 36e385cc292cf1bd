"""Exception hierarchy shared by all pcid modules."""

from __future__ import annotations

from dataclasses import dataclass


class PCIDError(Exception):
    """Base class for every error raised by this package."""


class MalformedDefinitionError(PCIDError, ValueError):
    """A rule body is not a plain propositional formula, or a head is not an atom."""


class PolarityError(PCIDError, ValueError):
    """Polarity was requested for an atom hidden inside a nested definition."""


class UnknownAtomError(PCIDError, KeyError):
    """A formula mentions an atom the interpretation does not assign."""

    def __str__(self) -> str:
        return Exception.__str__(self)


class ResourceLimitError(PCIDError):
    """An enumeration or proof-search bound was exceeded."""


class SchemaMismatch(PCIDError):
    """A rule instance does not fit its rule schema."""


class UnknownRuleError(PCIDError, ValueError):
    pass


class ContractError(PCIDError, ValueError):
    """A prover entry point was called outside its precondition."""


@dataclass(frozen=True)
class SourceSpan:
    begin: int
    end: int
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseError(PCIDError, ValueError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.message = message
        self.span = span


class ArityError(ParseError):
    """A serialized proof node has the wrong number of premises for its rule."""
