"""Token and tree types for ludemic game descriptions."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum


class TokenKind(Enum):
    LPAREN = "("
    RPAREN = ")"
    LBRACE = "{"
    RBRACE = "}"
    IDENT = "ident"
    STRING = "string"
    NUMBER = "number"
    BOOLEAN = "boolean"


@dataclass(frozen=True)
class Token:
    """A lexeme with its source position (1-based line and column)."""

    kind: TokenKind
    text: str
    line: int
    col: int


@dataclass(frozen=True)
class CompoundNode:
    """``(head arg ...)``"""

    head: str
    args: tuple[Node, ...] = ()


@dataclass(frozen=True)
class ValueNode:
    """A string, number or boolean literal. Never a ludeme."""

    value: str | int | float | bool


@dataclass(frozen=True)
class ListNode:
    """``{ item ... }``"""

    items: tuple[Node, ...] = ()


@dataclass(frozen=True)
class KeywordNode:
    """An identifier in argument position, e.g. ``Add`` or ``P1``."""

    name: str


Node = CompoundNode | ValueNode | ListNode | KeywordNode


@dataclass(frozen=True)
class LudemeSet:
    """Lowercased ludeme names used by one description."""

    names: frozenset[str]

    def __contains__(self, name: object) -> bool:
        return isinstance(name, str) and name.lower() in self.names

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.names))

    def __len__(self) -> int:
        return len(self.names)
