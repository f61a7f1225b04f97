"""Tokenizer for the SQL dialect.

Tokens keep the raw source text plus a 1-based line/column, so the original
input can be reconstructed from the token stream and the whitespace between
tokens. Keywords are matched case-insensitively; identifiers preserve case.
``--`` starts a comment running to end of line.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..errors import LexError

KEYWORDS = frozenset(
    {
        "select", "from", "where", "create", "or", "replace", "model",
        "table", "options", "as", "is", "not", "null", "case", "when",
        "then", "else", "end", "csv",
    }
)

# multi-char symbols first so <= beats <
SYMBOLS = ("<=", ">=", "<>", "(", ")", "[", "]", ",", ";", ".", "*", "=", "<", ">", "+", "-", "/")


class TokenKind(Enum):
    KEYWORD = "keyword"
    IDENT = "identifier"
    QUOTED_IDENT = "quoted-identifier"
    STRING = "string-literal"
    NUMBER = "number-literal"
    SYMBOL = "symbol"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    line: int
    column: int

    def unquoted(self) -> str:
        """Identifier or string value with quoting stripped."""
        if self.kind is TokenKind.QUOTED_IDENT:
            return self.text[1:-1]
        if self.kind is TokenKind.STRING:
            return self.text[1:-1].replace("''", "'")
        return self.text

    def matches_keyword(self, word: str) -> bool:
        return self.kind is TokenKind.KEYWORD and self.text.lower() == word


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_"


def _is_ident_char(ch: str) -> bool:
    return ch.isalnum() or ch == "_"


def tokenize(text: str) -> list[Token]:
    """Lex the full input, skipping whitespace and ``--`` comments."""
    tokens: list[Token] = []
    pos = 0
    line = 1
    col = 1
    n = len(text)

    def advance(count: int) -> None:
        nonlocal pos, line, col
        for _ in range(count):
            if text[pos] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            pos += 1

    while pos < n:
        ch = text[pos]
        if ch in " \t\r\n":
            advance(1)
            continue
        if ch == "-" and text.startswith("--", pos):
            while pos < n and text[pos] != "\n":
                advance(1)
            continue

        start_line, start_col = line, col

        if ch == "'":
            end = pos + 1
            while True:
                if end >= n or text[end] == "\n":
                    raise LexError("unterminated string literal", start_line, start_col)
                if text[end] == "'":
                    if end + 1 < n and text[end + 1] == "'":
                        end += 2  # '' escape
                        continue
                    break
                end += 1
            raw = text[pos : end + 1]
            advance(len(raw))
            tokens.append(Token(TokenKind.STRING, raw, start_line, start_col))
            continue

        if ch == "`":
            end = pos + 1
            while end < n and text[end] != "`" and text[end] != "\n":
                end += 1
            if end >= n or text[end] != "`":
                raise LexError("unterminated quoted identifier", start_line, start_col)
            raw = text[pos : end + 1]
            advance(len(raw))
            tokens.append(Token(TokenKind.QUOTED_IDENT, raw, start_line, start_col))
            continue

        if ch.isdigit() or (ch == "." and pos + 1 < n and text[pos + 1].isdigit()):
            end = pos
            while end < n and text[end].isdigit():
                end += 1
            if end < n and text[end] == ".":
                end += 1
                while end < n and text[end].isdigit():
                    end += 1
            if end < n and text[end] in "eE":
                exp = end + 1
                if exp < n and text[exp] in "+-":
                    exp += 1
                if exp < n and text[exp].isdigit():
                    end = exp
                    while end < n and text[end].isdigit():
                        end += 1
            raw = text[pos:end]
            advance(len(raw))
            tokens.append(Token(TokenKind.NUMBER, raw, start_line, start_col))
            continue

        if _is_ident_start(ch):
            end = pos
            while end < n and _is_ident_char(text[end]):
                end += 1
            raw = text[pos:end]
            advance(len(raw))
            kind = TokenKind.KEYWORD if raw.lower() in KEYWORDS else TokenKind.IDENT
            tokens.append(Token(kind, raw, start_line, start_col))
            continue

        for sym in SYMBOLS:
            if text.startswith(sym, pos):
                advance(len(sym))
                tokens.append(Token(TokenKind.SYMBOL, sym, start_line, start_col))
                break
        else:
            raise LexError(f"illegal character {ch!r}", start_line, start_col)

    return tokens
