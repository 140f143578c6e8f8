"""Ludemic game description language: lexing, parsing, printing."""

from heuristic_portfolio.gdl.models import (
    CompoundNode,
    KeywordNode,
    ListNode,
    LudemeSet,
    Node,
    Token,
    TokenKind,
    ValueNode,
)
from heuristic_portfolio.gdl.parser import (
    extract_ludemes,
    game_name,
    parse,
    parse_text,
    pretty_print,
)
from heuristic_portfolio.gdl.tokenizer import tokenize

__all__ = [
    "CompoundNode",
    "KeywordNode",
    "ListNode",
    "LudemeSet",
    "Node",
    "Token",
    "TokenKind",
    "ValueNode",
    "extract_ludemes",
    "game_name",
    "parse",
    "parse_text",
    "pretty_print",
    "tokenize",
]
