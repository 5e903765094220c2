import os
from typing import List, Type, TypeVar

from lark import Lark
from lark.exceptions import (
    UnexpectedCharacters,
    UnexpectedEOF,
    UnexpectedInput,
    UnexpectedToken,
)

from ..errors import SuperPatternError

THIS_DIR = os.path.dirname(__file__)
GRAMMARS_DIR = os.path.join(THIS_DIR, "..", "grammars")


class SourceSyntaxError(SuperPatternError):
    """
    Syntax error at a position of a parsed text. Line and column are 1-based.
    """

    def __init__(self, message: str, line: int = 0, column: int = 0, expected: List[str] = ()):
        self.line = line
        self.column = column
        self.expected = list(expected)
        self.message = message
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


E = TypeVar("E", bound=SourceSyntaxError)


def load_parser(grammar_file: str) -> Lark:
    with open(os.path.join(GRAMMARS_DIR, grammar_file), "r") as fl:
        return Lark(fl, start="start", parser="lalr", maybe_placeholders=True)


def normalize_source(src: str) -> str:
    src = src.replace("\r\n", "\n").replace("\r", "\n")
    if src and not src.endswith("\n"):
        src += "\n"
    return src


def from_lark_error(cls: Type[E], e: UnexpectedInput) -> E:
    expected: List[str] = []
    if isinstance(e, (UnexpectedToken, UnexpectedEOF)):
        expected = sorted(e.expected)
    elif isinstance(e, UnexpectedCharacters):
        expected = sorted(e.allowed or ())

    if isinstance(e, UnexpectedToken) and e.token.type == "$END":
        message = "unexpected end of input"
    elif isinstance(e, UnexpectedToken):
        message = f"unexpected {e.token!r}"
    elif isinstance(e, UnexpectedCharacters):
        message = f"unexpected character {e.char!r}"
    else:
        message = "unexpected end of input"
    if expected:
        message += "; expected one of: " + ", ".join(expected)

    line = max(getattr(e, "line", 0) or 0, 0)
    column = max(getattr(e, "column", 0) or 0, 0)
    return cls(message, line, column, expected)
