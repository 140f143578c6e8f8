"""Exception hierarchy for the workbench.

Data errors subclass ``ValueError`` so callers that only care about bad input
can keep catching that.
"""

from __future__ import annotations


class WorkbenchError(Exception):
    """Base class for every error the workbench raises on purpose."""


# --- game descriptions ---------------------------------------------------


class GdlSyntaxError(WorkbenchError, ValueError):
    """A description could not be tokenized or parsed."""

    def __init__(self, message: str, *, line: int = 0, col: int = 0) -> None:
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line else ""
        super().__init__(f"{where}{message}")


class UnterminatedString(GdlSyntaxError):
    pass


class IllegalCharacter(GdlSyntaxError):
    pass


class UnbalancedParens(GdlSyntaxError):
    pass


class EmptyCompound(GdlSyntaxError):
    pass


class TrailingTokens(GdlSyntaxError):
    pass


# --- compilation and play ------------------------------------------------


class CompileError(WorkbenchError, ValueError):
    """A parsed description cannot be turned into a playable game."""


class UnsupportedLudeme(CompileError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"Unsupported ludeme: '{name}'")


class MissingSection(CompileError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"Missing section: '{name}'")


class InvalidBoard(CompileError):
    pass


class IllegalMove(WorkbenchError, ValueError):
    pass


class EngineFailure(WorkbenchError):
    """A match could not be played to completion."""


class NotApplicable(WorkbenchError, ValueError):
    def __init__(self, kind: str, game: str) -> None:
        self.kind = kind
        self.game = game
        super().__init__(f"Heuristic {kind} is not applicable to {game}")


# --- datasets ------------------------------------------------------------


class CorpusError(WorkbenchError, ValueError):
    pass


class DuplicateGameName(WorkbenchError, ValueError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"Duplicate game name: '{name}'")


class MissingResults(WorkbenchError, ValueError):
    def __init__(self, game: str) -> None:
        self.game = game
        super().__init__(f"No tournament results for game '{game}'")


class MalformedCsv(WorkbenchError, ValueError):
    def __init__(self, line: int, reason: str) -> None:
        self.line = line
        super().__init__(f"Malformed CSV at line {line}: {reason}")


# --- learning and clustering ---------------------------------------------


class DegenerateInput(WorkbenchError, ValueError):
    pass


class PerplexityTooLarge(WorkbenchError, ValueError):
    pass
