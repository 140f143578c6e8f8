"""Lexer for the ludemic S-expression language."""

from __future__ import annotations

import re

from heuristic_portfolio.errors import IllegalCharacter, UnterminatedString
from heuristic_portfolio.gdl.models import Token, TokenKind

_TOKEN_PATTERN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>//[^\n]*)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<lbrace>\{)
  | (?P<rbrace>\})
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<number>-?\d+(?:\.\d+)?(?![A-Za-z0-9_.]))
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)

_PUNCTUATION = {
    "lparen": TokenKind.LPAREN,
    "rparen": TokenKind.RPAREN,
    "lbrace": TokenKind.LBRACE,
    "rbrace": TokenKind.RBRACE,
}

BOOLEAN_LITERALS = ("True", "False")


def unescape(body: str) -> str:
    """Resolve ``\\"`` and ``\\\\`` inside a string literal body."""
    return re.sub(r"\\(.)", r"\1", body)


def escape(value: str) -> str:
    return value.replace("\\", "\\\\").replace('"', '\\"')


def tokenize(text: str) -> list[Token]:
    """Split a description into tokens, dropping whitespace and ``//`` comments."""
    tokens: list[Token] = []
    pos = 0
    line = 1
    line_start = 0

    while pos < len(text):
        col = pos - line_start + 1
        match = _TOKEN_PATTERN.match(text, pos)
        if match is None:
            char = text[pos]
            if char == '"':
                raise UnterminatedString("unterminated string", line=line, col=col)
            raise IllegalCharacter(f"illegal character {char!r}", line=line, col=col)

        group = match.lastgroup
        lexeme = match.group()
        if group in _PUNCTUATION:
            tokens.append(Token(_PUNCTUATION[group], lexeme, line, col))
        elif group == "string":
            tokens.append(Token(TokenKind.STRING, unescape(lexeme[1:-1]), line, col))
        elif group == "number":
            tokens.append(Token(TokenKind.NUMBER, lexeme, line, col))
        elif group == "ident":
            kind = TokenKind.BOOLEAN if lexeme in BOOLEAN_LITERALS else TokenKind.IDENT
            tokens.append(Token(kind, lexeme, line, col))

        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            line_start = pos + lexeme.rindex("\n") + 1
        pos = match.end()

    return tokens
