import pytest

from minibqml.errors import LexError
from minibqml.sql.lexer import Token, TokenKind, tokenize


def kinds_and_texts(text):
    return [(t.kind, t.text) for t in tokenize(text)]


def test_minimal_statement():
    assert kinds_and_texts("SELECT *") == [
        (TokenKind.KEYWORD, "SELECT"),
        (TokenKind.SYMBOL, "*"),
    ]


def test_coalesce_call_tokens():
    assert kinds_and_texts("COALESCE(age, 50)") == [
        (TokenKind.IDENT, "COALESCE"),
        (TokenKind.SYMBOL, "("),
        (TokenKind.IDENT, "age"),
        (TokenKind.SYMBOL, ","),
        (TokenKind.NUMBER, "50"),
        (TokenKind.SYMBOL, ")"),
    ]


def test_unterminated_string():
    with pytest.raises(LexError) as exc:
        tokenize("'unterminated")
    assert exc.value.line == 1
    assert exc.value.column == 1


def test_unterminated_string_position_on_later_line():
    with pytest.raises(LexError) as exc:
        tokenize("SELECT *\nFROM t WHERE x = 'oops")
    assert exc.value.line == 2
    assert exc.value.column == 18


def test_illegal_character():
    with pytest.raises(LexError) as exc:
        tokenize("SELECT @")
    assert exc.value.line == 1
    assert exc.value.column == 8


def test_keywords_case_insensitive_identifiers_preserve_case():
    tokens = tokenize("select MixedCase FROM T")
    assert tokens[0].kind is TokenKind.KEYWORD and tokens[0].text == "select"
    assert tokens[1].kind is TokenKind.IDENT and tokens[1].text == "MixedCase"
    assert tokens[2].kind is TokenKind.KEYWORD
    assert tokens[3].text == "T"


def test_comments_are_skipped():
    tokens = tokenize("SELECT * -- trailing comment\n-- full line\nFROM t")
    assert [t.text for t in tokens] == ["SELECT", "*", "FROM", "t"]


def test_string_escape_and_backticks():
    tokens = tokenize("SELECT 'it''s' FROM `weird name`")
    assert tokens[1].kind is TokenKind.STRING
    assert tokens[1].unquoted() == "it's"
    assert tokens[3].kind is TokenKind.QUOTED_IDENT
    assert tokens[3].unquoted() == "weird name"


def test_scientific_notation_and_decimals():
    tokens = tokenize("0.00001 1e-05 2.5 .5 150")
    assert [t.kind for t in tokens] == [TokenKind.NUMBER] * 5
    assert [float(t.text) for t in tokens] == [1e-05, 1e-05, 2.5, 0.5, 150.0]


def _reconstruct(text: str, tokens: list[Token]) -> bool:
    """Check tokens sit at their reported positions and the gaps between
    them hold only whitespace or comments (lossless lexing)."""
    lines = text.split("\n")

    def offset(line, column):
        return sum(len(l) + 1 for l in lines[: line - 1]) + column - 1

    cursor = 0
    for tok in tokens:
        start = offset(tok.line, tok.column)
        if text[start : start + len(tok.text)] != tok.text:
            return False
        gap = text[cursor:start]
        while gap:
            stripped = gap.lstrip(" \t\r\n")
            if not stripped:
                break
            if stripped.startswith("--"):
                newline = stripped.find("\n")
                gap = "" if newline < 0 else stripped[newline:]
            else:
                return False
        else:
            pass
        cursor = start + len(tok.text)
    remainder = text[cursor:]
    return remainder.strip(" \t\r\n") == "" or remainder.lstrip().startswith("--")


@pytest.mark.parametrize(
    "text",
    [
        "SELECT a, b FROM t WHERE x >= 10.5",
        "SELECT *,\n  COALESCE(age, 50) AS age_imputed\nFROM diabetes_data;",
        "CREATE MODEL m OPTIONS(a = 1) AS SELECT * FROM t  -- done",
        "SELECT 'a;b' FROM `x.y.z`",
    ],
)
def test_lossless_positions(text):
    assert _reconstruct(text, tokenize(text))


def test_all_positions_inside_input():
    text = "SELECT a\n  FROM t\nWHERE x = 1"
    lines = text.split("\n")
    for tok in tokenize(text):
        assert 1 <= tok.line <= len(lines)
        assert 1 <= tok.column <= len(lines[tok.line - 1]) + 1
