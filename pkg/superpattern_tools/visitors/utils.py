from dataclasses import dataclass
from typing import Any, List, Optional, Tuple

from lark.lexer import Token


@dataclass(frozen=True)
class Located:
    """
    A transformed line together with the position of its first value token.
    """

    key: str
    value: Any
    line: int
    column: int


def text(tok: Token) -> str:
    return str(tok).strip()


def position(tok: Token) -> Tuple[int, int]:
    return tok.line, tok.column


def pairs(items: Optional[List]) -> List[Tuple[str, str]]:
    # `[pair ("," pair)*]` yields [None] when the list is empty.
    return [p for p in (items or []) if p is not None]
