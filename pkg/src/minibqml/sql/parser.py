"""Recursive-descent parser producing AST nodes from the token stream.

Statement forms:

  SELECT <projections> FROM <table> [WHERE <expr>]
  SELECT * FROM ML.<fn>(MODEL <name> ...)          -- sugar for the bare form
  CREATE [OR REPLACE] MODEL <name> OPTIONS(...) AS SELECT ...
  CREATE [OR REPLACE] TABLE <name> FROM CSV '<path>'
  ML.EVALUATE(MODEL <name>[, (SELECT ...)])
  ML.PREDICT(MODEL <name>, (SELECT ...)[, <threshold>])
  ML.FEATURE_IMPORTANCE(MODEL <name>)
  ML.ROC_CURVE(MODEL <name>)

Qualified names have one to three dot-separated parts, each bare or
backtick-quoted; a single backticked part may itself contain dots. Only the
last part is kept.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import OptionError, ParseError
from .ast_nodes import (
    AGGREGATE_FUNCS,
    AggregateCall,
    BinaryOp,
    CaseWhen,
    Coalesce,
    ColumnRef,
    CreateModelStmt,
    CreateTableFromCsvStmt,
    Expr,
    IsNull,
    Literal,
    MlEvaluateStmt,
    MlFeatureImportanceStmt,
    MlPredictStmt,
    MlRocCurveStmt,
    SelectStmt,
    Star,
    Statement,
    contains_aggregate,
)
from .lexer import Token, TokenKind, tokenize

_ML_FUNCTIONS = ("evaluate", "predict", "feature_importance", "roc_curve")

_COMPARISON_OPS = ("=", "<>", "<=", ">=", "<", ">")


class _Cursor:
    def __init__(self, tokens: list[Token], end_line: int = 1, end_col: int = 1):
        self.tokens = tokens
        self.pos = 0
        if tokens:
            last = tokens[-1]
            end_line, end_col = last.line, last.column + len(last.text)
        self.end_line = end_line
        self.end_col = end_col

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def error(self, message: str, expected: tuple[str, ...] = ()) -> ParseError:
        tok = self.peek()
        if tok is None:
            return ParseError(f"{message} at end of input", self.end_line, self.end_col, expected)
        return ParseError(f"{message} at {tok.text!r}", tok.line, tok.column, expected)

    # --- matching helpers ---------------------------------------------------

    def match_keyword(self, word: str) -> bool:
        tok = self.peek()
        if tok is not None and tok.matches_keyword(word):
            self.advance()
            return True
        return False

    def expect_keyword(self, word: str) -> Token:
        if not self.check_keyword(word):
            raise self.error("unexpected token", expected=(word.upper(),))
        return self.advance()

    def check_keyword(self, word: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.matches_keyword(word)

    def match_symbol(self, sym: str) -> bool:
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.SYMBOL and tok.text == sym:
            self.advance()
            return True
        return False

    def expect_symbol(self, sym: str) -> Token:
        tok = self.peek()
        if tok is None or tok.kind is not TokenKind.SYMBOL or tok.text != sym:
            raise self.error("unexpected token", expected=(sym,))
        return self.advance()

    def check_symbol(self, sym: str, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok is not None and tok.kind is TokenKind.SYMBOL and tok.text == sym

    def check_ident(self, name: str, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok is not None and tok.kind is TokenKind.IDENT and tok.text.lower() == name


def _name_part(cur: _Cursor) -> list[str]:
    tok = cur.peek()
    if tok is None or tok.kind not in (TokenKind.IDENT, TokenKind.QUOTED_IDENT):
        raise cur.error("expected a name", expected=("identifier",))
    cur.advance()
    if tok.kind is TokenKind.QUOTED_IDENT:
        return tok.unquoted().split(".")
    return [tok.text]


def _qualified_name(cur: _Cursor) -> str:
    start = cur.peek()
    parts = _name_part(cur)
    while cur.check_symbol("."):
        cur.advance()
        parts.extend(_name_part(cur))
    if not 1 <= len(parts) <= 3 or any(p == "" for p in parts):
        line, col = (start.line, start.column) if start else (cur.end_line, cur.end_col)
        raise ParseError(f"name must have 1-3 dot-separated parts, got {'.'.join(parts)!r}", line, col)
    return parts[-1]


# --- expressions --------------------------------------------------------------


def _parse_expr(cur: _Cursor) -> Expr:
    return _parse_comparison(cur)


def _parse_comparison(cur: _Cursor) -> Expr:
    left = _parse_additive(cur)
    if cur.check_keyword("is"):
        cur.advance()
        negated = cur.match_keyword("not")
        cur.expect_keyword("null")
        return IsNull(left, negated)
    tok = cur.peek()
    if tok is not None and tok.kind is TokenKind.SYMBOL and tok.text in _COMPARISON_OPS:
        cur.advance()
        right = _parse_additive(cur)
        return BinaryOp(tok.text, left, right)
    return left


def _parse_additive(cur: _Cursor) -> Expr:
    left = _parse_multiplicative(cur)
    while True:
        tok = cur.peek()
        if tok is not None and tok.kind is TokenKind.SYMBOL and tok.text in ("+", "-"):
            cur.advance()
            left = BinaryOp(tok.text, left, _parse_multiplicative(cur))
        else:
            return left


def _parse_multiplicative(cur: _Cursor) -> Expr:
    left = _parse_unary(cur)
    while True:
        tok = cur.peek()
        if tok is not None and tok.kind is TokenKind.SYMBOL and tok.text in ("*", "/"):
            cur.advance()
            left = BinaryOp(tok.text, left, _parse_unary(cur))
        else:
            return left


def _parse_unary(cur: _Cursor) -> Expr:
    if cur.check_symbol("-"):
        minus = cur.advance()
        tok = cur.peek()
        if tok is None or tok.kind is not TokenKind.NUMBER:
            raise ParseError("'-' is only supported before a number literal", minus.line, minus.column)
        cur.advance()
        return Literal(-float(tok.text))
    return _parse_primary(cur)


def _parse_case(cur: _Cursor) -> Expr:
    whens = []
    while cur.match_keyword("when"):
        cond = _parse_expr(cur)
        cur.expect_keyword("then")
        whens.append((cond, _parse_expr(cur)))
    if not whens:
        raise cur.error("CASE requires at least one WHEN", expected=("WHEN",))
    else_result = _parse_expr(cur) if cur.match_keyword("else") else None
    cur.expect_keyword("end")
    return CaseWhen(tuple(whens), else_result)


def _parse_call(cur: _Cursor, name_tok: Token) -> Expr:
    """Parse a function call; the name token is already consumed."""
    func = name_tok.text.lower()
    cur.expect_symbol("(")
    if func in AGGREGATE_FUNCS:
        args: list[Expr] = []
        if func == "count" and cur.check_symbol("*"):
            cur.advance()
            args.append(Star())
        else:
            args.append(_parse_expr(cur))
            while cur.match_symbol(","):
                args.append(_parse_expr(cur))
        cur.expect_symbol(")")
        arity = 2 if func == "corr" else 1
        if len(args) != arity:
            raise ParseError(
                f"{func.upper()} takes {arity} argument(s), got {len(args)}",
                name_tok.line, name_tok.column,
            )
        if any(contains_aggregate(a) for a in args):
            raise ParseError("aggregates cannot nest", name_tok.line, name_tok.column)
        return AggregateCall(func, tuple(args))
    if func == "coalesce":
        args = [_parse_expr(cur)]
        while cur.match_symbol(","):
            args.append(_parse_expr(cur))
        cur.expect_symbol(")")
        return Coalesce(tuple(args))
    raise ParseError(f"unknown function {name_tok.text!r}", name_tok.line, name_tok.column)


def _parse_primary(cur: _Cursor) -> Expr:
    tok = cur.peek()
    if tok is None:
        raise cur.error("expected an expression")
    if tok.kind is TokenKind.NUMBER:
        cur.advance()
        return Literal(float(tok.text))
    if tok.kind is TokenKind.STRING:
        cur.advance()
        return Literal(tok.unquoted())
    if tok.matches_keyword("null"):
        cur.advance()
        return Literal(None)
    if tok.matches_keyword("case"):
        cur.advance()
        return _parse_case(cur)
    if tok.kind is TokenKind.SYMBOL and tok.text == "(":
        cur.advance()
        inner = _parse_expr(cur)
        cur.expect_symbol(")")
        return inner
    if tok.kind in (TokenKind.IDENT, TokenKind.QUOTED_IDENT):
        cur.advance()
        if tok.kind is TokenKind.IDENT and cur.check_symbol("("):
            return _parse_call(cur, tok)
        return ColumnRef(tok.unquoted())
    raise cur.error("expected an expression")


# --- statements ---------------------------------------------------------------


def _parse_projection(cur: _Cursor) -> tuple[Expr, str | None]:
    if cur.check_symbol("*"):
        cur.advance()
        return Star(), None
    expr = _parse_expr(cur)
    alias = None
    if cur.match_keyword("as"):
        tok = cur.peek()
        if tok is None or tok.kind not in (TokenKind.IDENT, TokenKind.QUOTED_IDENT):
            raise cur.error("expected an alias", expected=("identifier",))
        cur.advance()
        alias = tok.unquoted()
    return expr, alias


def _at_ml_function(cur: _Cursor) -> bool:
    return (
        cur.check_ident("ml")
        and cur.check_symbol(".", 1)
        and cur.peek(2) is not None
        and cur.peek(2).kind is TokenKind.IDENT
        and cur.peek(2).text.lower() in _ML_FUNCTIONS
        and cur.check_symbol("(", 3)
    )


def _parse_select(cur: _Cursor) -> Statement:
    cur.expect_keyword("select")
    projections = [_parse_projection(cur)]
    while cur.match_symbol(","):
        projections.append(_parse_projection(cur))
    cur.expect_keyword("from")

    if _at_ml_function(cur):
        fn_tok = cur.peek(2)
        stmt = _parse_ml_function(cur)
        if len(projections) != 1 or not isinstance(projections[0][0], Star):
            raise ParseError(
                "only SELECT * is supported over an ML table function",
                fn_tok.line, fn_tok.column,
            )
        if cur.check_keyword("where"):
            raise cur.error("WHERE is not supported over an ML table function")
        return stmt

    table = _qualified_name(cur)
    where = _parse_expr(cur) if cur.match_keyword("where") else None
    return SelectStmt(tuple(projections), table, where)


def _parse_plain_select(cur: _Cursor) -> SelectStmt:
    stmt = _parse_select(cur)
    if not isinstance(stmt, SelectStmt):
        raise cur.error("ML table functions cannot appear here")
    return stmt


def _parse_option_value(cur: _Cursor):
    if cur.match_symbol("["):
        items: list = []
        if not cur.check_symbol("]"):
            items.append(_parse_option_scalar(cur))
            while cur.match_symbol(","):
                items.append(_parse_option_scalar(cur))
        cur.expect_symbol("]")
        return tuple(items)
    return _parse_option_scalar(cur)


def _parse_option_scalar(cur: _Cursor):
    tok = cur.peek()
    if tok is None:
        raise cur.error("expected an option value")
    if tok.kind is TokenKind.NUMBER:
        cur.advance()
        return float(tok.text)
    if tok.kind is TokenKind.STRING:
        cur.advance()
        return tok.unquoted()
    if tok.kind is TokenKind.SYMBOL and tok.text == "-":
        cur.advance()
        num = cur.peek()
        if num is None or num.kind is not TokenKind.NUMBER:
            raise cur.error("expected a number", expected=("number",))
        cur.advance()
        return -float(num.text)
    raise cur.error("expected a literal option value", expected=("number", "string", "["))


def _parse_options(cur: _Cursor) -> dict:
    from .options import validate_options

    cur.expect_keyword("options")
    cur.expect_symbol("(")
    raw: dict = {}
    while True:
        tok = cur.peek()
        if tok is None or tok.kind is not TokenKind.IDENT:
            raise cur.error("expected an option key", expected=("identifier",))
        cur.advance()
        key = tok.text
        if key.lower() in {k.lower() for k in raw}:
            raise OptionError(key, "duplicate option key")
        cur.expect_symbol("=")
        raw[key] = _parse_option_value(cur)
        if cur.match_symbol(","):
            continue
        cur.expect_symbol(")")
        break
    return validate_options(raw)


def _parse_create(cur: _Cursor) -> Statement:
    cur.expect_keyword("create")
    replace = False
    if cur.match_keyword("or"):
        cur.expect_keyword("replace")
        replace = True
    if cur.match_keyword("model"):
        name = _qualified_name(cur)
        options = _parse_options(cur)
        cur.expect_keyword("as")
        query = _parse_plain_select(cur)
        return CreateModelStmt(name, replace, options, query)
    if cur.match_keyword("table"):
        name = _qualified_name(cur)
        cur.expect_keyword("from")
        cur.expect_keyword("csv")
        tok = cur.peek()
        if tok is None or tok.kind is not TokenKind.STRING:
            raise cur.error("expected a CSV path string", expected=("string-literal",))
        cur.advance()
        return CreateTableFromCsvStmt(name, tok.unquoted(), replace)
    raise cur.error("unexpected token", expected=("MODEL", "TABLE"))


def _parse_ml_function(cur: _Cursor) -> Statement:
    cur.advance()  # ml
    cur.expect_symbol(".")
    fn_tok = cur.advance()
    fn = fn_tok.text.lower()
    cur.expect_symbol("(")
    cur.expect_keyword("model")
    model = _qualified_name(cur)

    input_query = None
    threshold = 0.5
    if cur.match_symbol(","):
        if cur.check_symbol("("):
            cur.advance()
            input_query = _parse_plain_select(cur)
            cur.expect_symbol(")")
            if cur.match_symbol(","):
                tok = cur.peek()
                value = _parse_option_scalar(cur)
                if not isinstance(value, float) or not 0.0 <= value <= 1.0:
                    line, col = (tok.line, tok.column) if tok else (cur.end_line, cur.end_col)
                    raise ParseError(f"threshold must be a number in [0, 1], got {value!r}", line, col)
                threshold = value
        else:
            raise cur.error("expected a parenthesized SELECT", expected=("(",))
    cur.expect_symbol(")")

    if fn == "evaluate":
        return MlEvaluateStmt(model, input_query)
    if fn == "predict":
        if input_query is None:
            raise ParseError("ML.PREDICT requires an input query", fn_tok.line, fn_tok.column)
        return MlPredictStmt(model, input_query, threshold)
    if input_query is not None:
        raise ParseError(f"ML.{fn.upper()} takes only a model", fn_tok.line, fn_tok.column)
    if fn == "feature_importance":
        return MlFeatureImportanceStmt(model)
    return MlRocCurveStmt(model)


def _parse_statement_body(cur: _Cursor) -> Statement:
    if cur.check_keyword("select"):
        return _parse_select(cur)
    if cur.check_keyword("create"):
        return _parse_create(cur)
    if _at_ml_function(cur):
        return _parse_ml_function(cur)
    raise cur.error("expected a statement", expected=("SELECT", "CREATE", "ML.<function>"))


def parse_statement(text: str) -> Statement:
    """Parse exactly one statement, optionally ``;``-terminated."""
    cur = _Cursor(tokenize(text))
    if cur.at_end():
        raise ParseError("empty statement", 1, 1)
    stmt = _parse_statement_body(cur)
    cur.match_symbol(";")
    if not cur.at_end():
        raise cur.error("trailing input after statement")
    return stmt


@dataclass(frozen=True)
class ScriptStatement:
    statement: Statement
    line: int
    column: int


def iter_statements(text: str):
    """Lazily parse a ``;``-separated script, one statement per step.

    Lex errors surface immediately; parse errors surface when the faulty
    statement is reached, so earlier statements can already have executed.
    """
    cur = _Cursor(tokenize(text))
    while not cur.at_end():
        if cur.match_symbol(";"):
            continue
        start = cur.peek()
        stmt = _parse_statement_body(cur)
        if not cur.at_end() and not cur.check_symbol(";"):
            raise cur.error("expected ';' between statements", expected=(";",))
        yield ScriptStatement(stmt, start.line, start.column)


def parse_script(text: str) -> list[ScriptStatement]:
    """Parse a ``;``-separated script into positioned statements."""
    return list(iter_statements(text))
