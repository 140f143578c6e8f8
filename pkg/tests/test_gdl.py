"""Tests for the description tokenizer, parser and printer."""

import random
from pathlib import Path

import pytest

from heuristic_portfolio.errors import (
    EmptyCompound,
    GdlSyntaxError,
    IllegalCharacter,
    TrailingTokens,
    UnbalancedParens,
    UnterminatedString,
)
from heuristic_portfolio.gdl import (
    CompoundNode,
    KeywordNode,
    ListNode,
    TokenKind,
    ValueNode,
    extract_ludemes,
    game_name,
    parse_text,
    pretty_print,
    tokenize,
)
from tests.games import SOW_GAME, TIC_TAC_TOE


def kinds(text: str) -> list[TokenKind]:
    return [t.kind for t in tokenize(text)]


def shuffled(node, rng: random.Random):
    """The same tree with the children of every compound and list reordered."""
    if isinstance(node, CompoundNode):
        args = [shuffled(a, rng) for a in node.args]
        rng.shuffle(args)
        return CompoundNode(node.head, tuple(args))
    if isinstance(node, ListNode):
        items = [shuffled(i, rng) for i in node.items]
        rng.shuffle(items)
        return ListNode(tuple(items))
    return node


class TestTokenize:
    def test_players(self):
        tokens = tokenize("(players 2)")
        assert [t.kind for t in tokens] == [
            TokenKind.LPAREN, TokenKind.IDENT, TokenKind.NUMBER, TokenKind.RPAREN,
        ]
        assert tokens[1].text == "players"
        assert tokens[2].text == "2"

    def test_piece_with_string(self):
        tokens = tokenize('(piece "Disc" P1)')
        assert [t.kind for t in tokens] == [
            TokenKind.LPAREN, TokenKind.IDENT, TokenKind.STRING, TokenKind.IDENT, TokenKind.RPAREN,
        ]
        assert tokens[2].text == "Disc"
        assert tokens[3].text == "P1"

    def test_braces(self):
        found = kinds("{ (board (square 3)) }")
        assert found[0] is TokenKind.LBRACE
        assert found[-1] is TokenKind.RBRACE

    def test_comments_and_whitespace_dropped(self):
        assert kinds("// heading\n(a)\t// trailing\n") == [
            TokenKind.LPAREN, TokenKind.IDENT, TokenKind.RPAREN,
        ]

    def test_positions(self):
        tokens = tokenize("(a\n  b)")
        assert (tokens[2].line, tokens[2].col) == (2, 3)

    def test_numbers_and_booleans(self):
        tokens = tokenize("(x -3 2.5 True False)")
        assert [t.kind for t in tokens[2:6]] == [
            TokenKind.NUMBER, TokenKind.NUMBER, TokenKind.BOOLEAN, TokenKind.BOOLEAN,
        ]

    def test_string_escapes(self):
        tokens = tokenize(r'(game "say \"hi\" \\ ok")')
        assert tokens[2].text == 'say "hi" \\ ok'

    def test_unterminated_string(self):
        with pytest.raises(UnterminatedString):
            tokenize('(game "Tic')

    def test_newline_inside_string(self):
        with pytest.raises(UnterminatedString):
            tokenize('(game "Tic\nTac")')

    def test_illegal_character(self):
        with pytest.raises(IllegalCharacter) as exc:
            tokenize("(a #)")
        assert (exc.value.line, exc.value.col) == (1, 4)

    def test_syntax_errors_are_value_errors(self):
        with pytest.raises(ValueError):
            tokenize("(a $)")


class TestParse:
    def test_tic_tac_toe_root(self):
        tree = parse_text(TIC_TAC_TOE)
        assert isinstance(tree, CompoundNode)
        assert tree.head == "game"
        assert tree.args[0] == ValueNode("Tic-Tac-Toe")
        assert [a.head for a in tree.args[1:]] == ["players", "equipment", "rules"]

    def test_players(self):
        assert parse_text("(players 2)") == CompoundNode("players", (ValueNode(2),))

    def test_keywords(self):
        move = parse_text("(move Add (to (sites Empty)))")
        assert move.args[0] == KeywordNode("Add")
        assert move.args[1].args[0].args[0] == KeywordNode("Empty")

    def test_list(self):
        equipment = parse_text("(equipment { (board (square 3)) })")
        assert isinstance(equipment.args[0], ListNode)
        assert equipment.args[0].items[0].head == "board"

    def test_empty_list(self):
        assert parse_text("(a {})").args[0] == ListNode(())

    def test_values(self):
        node = parse_text('(x 2.5 -1 True "s")')
        assert [a.value for a in node.args] == [2.5, -1, True, "s"]
        assert isinstance(node.args[0].value, float)
        assert isinstance(node.args[1].value, int)

    @pytest.mark.parametrize(
        "text, error",
        [
            ("", GdlSyntaxError),
            ("()", EmptyCompound),
            ("(a (b)", UnbalancedParens),
            ("(a", UnbalancedParens),
            ("(a))", UnbalancedParens),
            ("(a }", UnbalancedParens),
            (")", UnbalancedParens),
            ("(a) (b)", TrailingTokens),
            ('("x")', GdlSyntaxError),
            ("players", GdlSyntaxError),
        ],
    )
    def test_errors(self, text, error):
        with pytest.raises(error):
            parse_text(text)

    def test_error_reports_position(self):
        with pytest.raises(GdlSyntaxError) as exc:
            parse_text("(game\n  ())")
        assert exc.value.line == 2
        assert "2:3" in str(exc.value)


class TestExtractLudemes:
    def test_tic_tac_toe(self):
        ludemes = extract_ludemes(parse_text(TIC_TAC_TOE))
        expected = {
            "game", "players", "equipment", "board", "square", "piece", "rules", "play",
            "move", "add", "to", "sites", "empty", "end", "if", "is", "line", "result",
            "mover", "win", "p1", "p2",
        }
        assert expected <= ludemes.names
        for value in ("tic-tac-toe", "disc", "cross", "2", "3"):
            assert value not in ludemes.names
        assert "sow" not in ludemes

    def test_case_insensitive_membership(self):
        ludemes = extract_ludemes(parse_text(TIC_TAC_TOE))
        assert "Add" in ludemes
        assert "Mover" in ludemes
        assert 3 not in ludemes

    def test_sow_game(self):
        assert "sow" in extract_ludemes(parse_text(SOW_GAME))

    def test_every_ludeme_occurs_in_source(self, corpus_dir: Path):
        for path in corpus_dir.glob("*.gdl"):
            text = path.read_text(encoding="utf-8")
            for name in extract_ludemes(parse_text(text)):
                assert name in text.lower()

    def test_iteration_is_sorted(self):
        ludemes = extract_ludemes(parse_text("(b (a c))"))
        assert list(ludemes) == ["a", "b", "c"]
        assert len(ludemes) == 3

    def test_sibling_order_does_not_matter(self, corpus_dir: Path):
        for path in sorted(corpus_dir.glob("*.gdl")):
            tree = parse_text(path.read_text(encoding="utf-8"))
            expected = extract_ludemes(tree)
            for seed in range(5):
                reordered = shuffled(tree, random.Random(seed))
                assert extract_ludemes(reordered) == expected, path.name
                assert extract_ludemes(parse_text(pretty_print(reordered))) == expected, path.name


class TestPrettyPrint:
    def test_short_node_on_one_line(self):
        assert pretty_print(parse_text("(players   2)")) == "(players 2)\n"

    def test_long_node_breaks(self):
        lines = pretty_print(parse_text(TIC_TAC_TOE)).splitlines()
        assert lines[0] == '(game "Tic-Tac-Toe"'
        assert lines[-1] == ")"
        assert all(len(line) <= 80 for line in lines)

    def test_round_trip_corpus(self, corpus_dir: Path):
        for path in sorted(corpus_dir.glob("*.gdl")):
            tree = parse_text(path.read_text(encoding="utf-8"))
            assert parse_text(pretty_print(tree)) == tree, path.name

    def test_idempotent(self, corpus_dir: Path):
        for path in sorted(corpus_dir.glob("*.gdl")):
            once = pretty_print(parse_text(path.read_text(encoding="utf-8")))
            assert pretty_print(parse_text(once)) == once

    def test_escapes_round_trip(self):
        tree = parse_text(r'(game "a \"quoted\" name")')
        printed = pretty_print(tree)
        assert printed == '(game "a \\"quoted\\" name")\n'
        assert parse_text(printed) == tree

    def test_decimals_stay_decimal(self):
        printed = pretty_print(parse_text("(x 2.0 0.25)"))
        assert printed == "(x 2.0 0.25)\n"
        assert isinstance(parse_text(printed).args[0].value, float)

    def test_lists(self):
        assert pretty_print(parse_text("(a {} { b c })")) == "(a {} { b c })\n"


class TestGameName:
    def test_game_root(self):
        assert game_name(parse_text(TIC_TAC_TOE)) == "Tic-Tac-Toe"

    def test_other_root(self):
        assert game_name(parse_text("(players 2)")) is None
