"""Parser, pretty printer and ludeme extraction for game descriptions."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from heuristic_portfolio.errors import (
    EmptyCompound,
    GdlSyntaxError,
    TrailingTokens,
    UnbalancedParens,
)
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
from heuristic_portfolio.gdl.tokenizer import escape, tokenize

LINE_WIDTH = 80
INDENT = "    "

_CLOSERS = {TokenKind.LPAREN: TokenKind.RPAREN, TokenKind.LBRACE: TokenKind.RBRACE}


class _Parser:
    def __init__(self, tokens: Sequence[Token]) -> None:
        self._tokens = tokens
        self._pos = 0

    def _peek(self) -> Token | None:
        if self._pos < len(self._tokens):
            return self._tokens[self._pos]
        return None

    def _next(self, opener: Token) -> Token:
        token = self._peek()
        if token is None:
            raise UnbalancedParens(
                f"'{opener.text}' is never closed", line=opener.line, col=opener.col
            )
        self._pos += 1
        return token

    def parse_root(self) -> Node:
        first = self._peek()
        if first is None:
            raise GdlSyntaxError("empty description")
        if first.kind is not TokenKind.LPAREN:
            if first.kind in (TokenKind.RPAREN, TokenKind.RBRACE):
                raise UnbalancedParens(
                    f"unexpected '{first.text}'", line=first.line, col=first.col
                )
            raise GdlSyntaxError(
                "description must start with '('", line=first.line, col=first.col
            )
        self._pos += 1
        root = self._compound(first)
        extra = self._peek()
        if extra is not None:
            if extra.kind in (TokenKind.RPAREN, TokenKind.RBRACE):
                raise UnbalancedParens(
                    f"unexpected '{extra.text}'", line=extra.line, col=extra.col
                )
            raise TrailingTokens(
                f"unexpected {extra.text!r} after the root ludeme",
                line=extra.line,
                col=extra.col,
            )
        return root

    def _compound(self, opener: Token) -> CompoundNode:
        head = self._next(opener)
        if head.kind is TokenKind.RPAREN:
            raise EmptyCompound("empty '()'", line=opener.line, col=opener.col)
        if head.kind is not TokenKind.IDENT:
            raise GdlSyntaxError(
                "compound head must be an identifier", line=head.line, col=head.col
            )
        return CompoundNode(head.text, self._items(opener))

    def _list(self, opener: Token) -> ListNode:
        return ListNode(self._items(opener))

    def _items(self, opener: Token) -> tuple[Node, ...]:
        closer = _CLOSERS[opener.kind]
        items: list[Node] = []
        while True:
            token = self._next(opener)
            if token.kind is closer:
                return tuple(items)
            if token.kind in (TokenKind.RPAREN, TokenKind.RBRACE):
                raise UnbalancedParens(
                    f"'{token.text}' does not close '{opener.text}' "
                    f"opened at {opener.line}:{opener.col}",
                    line=token.line,
                    col=token.col,
                )
            items.append(self._argument(token))

    def _argument(self, token: Token) -> Node:
        match token.kind:
            case TokenKind.LPAREN:
                return self._compound(token)
            case TokenKind.LBRACE:
                return self._list(token)
            case TokenKind.IDENT:
                return KeywordNode(token.text)
            case TokenKind.STRING:
                return ValueNode(token.text)
            case TokenKind.BOOLEAN:
                return ValueNode(token.text == "True")
            case TokenKind.NUMBER:
                return ValueNode(float(token.text) if "." in token.text else int(token.text))
        raise GdlSyntaxError(f"unexpected token {token.text!r}", line=token.line, col=token.col)


def parse(tokens: Sequence[Token]) -> Node:
    """Build the tree for one description from its tokens."""
    return _Parser(tokens).parse_root()


def parse_text(text: str) -> Node:
    return parse(tokenize(text))


def extract_ludemes(tree: Node) -> LudemeSet:
    """Collect every compound head and keyword, lowercased. Values are skipped."""
    names: set[str] = set()
    stack: list[Node] = [tree]
    while stack:
        node = stack.pop()
        if isinstance(node, CompoundNode):
            names.add(node.head.lower())
            stack.extend(node.args)
        elif isinstance(node, ListNode):
            stack.extend(node.items)
        elif isinstance(node, KeywordNode):
            names.add(node.name.lower())
    return LudemeSet(frozenset(names))


def game_name(tree: Node) -> str | None:
    """The first string argument of a ``(game ...)`` root, if any."""
    if isinstance(tree, CompoundNode) and tree.head == "game":
        for arg in tree.args:
            if isinstance(arg, ValueNode) and isinstance(arg.value, str):
                return arg.value
    return None


def _format_value(value: str | int | float | bool) -> str:
    if isinstance(value, bool):
        return "True" if value else "False"
    if isinstance(value, str):
        return f'"{escape(value)}"'
    if isinstance(value, float):
        return np.format_float_positional(value, trim="0")
    return str(value)


def _inline(node: Node) -> str:
    if isinstance(node, CompoundNode):
        return "(" + " ".join([node.head, *(_inline(a) for a in node.args)]) + ")"
    if isinstance(node, ListNode):
        if not node.items:
            return "{}"
        return "{ " + " ".join(_inline(i) for i in node.items) + " }"
    if isinstance(node, KeywordNode):
        return node.name
    return _format_value(node.value)


def _render(node: Node, depth: int) -> list[str]:
    indent = INDENT * depth
    flat = _inline(node)
    if len(indent) + len(flat) <= LINE_WIDTH or isinstance(node, (KeywordNode, ValueNode)):
        return [indent + flat]

    if isinstance(node, CompoundNode):
        # leading atoms stay on the head line: (game "Name"
        split = 0
        while split < len(node.args) and isinstance(node.args[split], (KeywordNode, ValueNode)):
            split += 1
        atoms = "".join(" " + _inline(a) for a in node.args[:split])
        opening, children, closing = f"({node.head}{atoms}", node.args[split:], ")"
    else:
        opening, children, closing = "{", node.items, "}"

    lines = [indent + opening]
    for child in children:
        lines.extend(_render(child, depth + 1))
    lines.append(indent + closing)
    return lines


def pretty_print(tree: Node) -> str:
    """Canonical text for a tree; ``parse_text`` of the result gives the tree back."""
    return "\n".join(_render(tree, 0)) + "\n"
