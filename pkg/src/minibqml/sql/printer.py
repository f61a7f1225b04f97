"""Canonical pretty-printer: parse(pretty_print(s)) is structurally s."""

from __future__ import annotations

import re

from .ast_nodes import (
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
)
from .lexer import KEYWORDS

_BARE_IDENT_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def format_identifier(name: str) -> str:
    if _BARE_IDENT_RE.match(name) and name.lower() not in KEYWORDS:
        return name
    return f"`{name}`"


def format_number(value: float) -> str:
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def format_string(value: str) -> str:
    return "'" + value.replace("'", "''") + "'"


def _format_operand(expr: Expr) -> str:
    # nested binary ops are parenthesized so the round trip is unambiguous
    if isinstance(expr, (BinaryOp, IsNull)):
        return f"({format_expr(expr)})"
    return format_expr(expr)


def format_expr(expr: Expr) -> str:
    if isinstance(expr, Star):
        return "*"
    if isinstance(expr, ColumnRef):
        return format_identifier(expr.name)
    if isinstance(expr, Literal):
        if expr.value is None:
            return "NULL"
        if isinstance(expr.value, str):
            return format_string(expr.value)
        return format_number(expr.value)
    if isinstance(expr, BinaryOp):
        return f"{_format_operand(expr.left)} {expr.op} {_format_operand(expr.right)}"
    if isinstance(expr, IsNull):
        middle = "IS NOT NULL" if expr.negated else "IS NULL"
        return f"{_format_operand(expr.operand)} {middle}"
    if isinstance(expr, CaseWhen):
        parts = ["CASE"]
        for cond, result in expr.whens:
            parts.append(f"WHEN {format_expr(cond)} THEN {format_expr(result)}")
        if expr.else_result is not None:
            parts.append(f"ELSE {format_expr(expr.else_result)}")
        parts.append("END")
        return " ".join(parts)
    if isinstance(expr, Coalesce):
        return "COALESCE(" + ", ".join(format_expr(a) for a in expr.args) + ")"
    if isinstance(expr, AggregateCall):
        return expr.func.upper() + "(" + ", ".join(format_expr(a) for a in expr.args) + ")"
    raise TypeError(f"unknown expression node {expr!r}")


def _format_option_value(value) -> str:
    if isinstance(value, tuple):
        return "[" + ", ".join(_format_option_value(v) for v in value) + "]"
    if isinstance(value, str):
        return format_string(value)
    if isinstance(value, bool):
        raise TypeError("boolean option values are not part of the dialect")
    if isinstance(value, int):
        return str(value)
    return format_number(value)


def _format_select(stmt: SelectStmt) -> str:
    parts = []
    for expr, alias in stmt.projections:
        text = format_expr(expr)
        if alias is not None:
            text += f" AS {format_identifier(alias)}"
        parts.append(text)
    out = f"SELECT {', '.join(parts)} FROM {format_identifier(stmt.table)}"
    if stmt.where is not None:
        out += f" WHERE {format_expr(stmt.where)}"
    return out


def pretty_print(stmt: Statement) -> str:
    if isinstance(stmt, SelectStmt):
        return _format_select(stmt)
    if isinstance(stmt, CreateModelStmt):
        head = "CREATE OR REPLACE MODEL" if stmt.replace else "CREATE MODEL"
        opts = ", ".join(f"{k} = {_format_option_value(v)}" for k, v in stmt.options.items())
        return f"{head} {format_identifier(stmt.name)} OPTIONS({opts}) AS {_format_select(stmt.query)}"
    if isinstance(stmt, CreateTableFromCsvStmt):
        head = "CREATE OR REPLACE TABLE" if stmt.replace else "CREATE TABLE"
        return f"{head} {format_identifier(stmt.name)} FROM CSV {format_string(stmt.path)}"
    if isinstance(stmt, MlEvaluateStmt):
        if stmt.input is None:
            return f"ML.EVALUATE(MODEL {format_identifier(stmt.model)})"
        return f"ML.EVALUATE(MODEL {format_identifier(stmt.model)}, ({_format_select(stmt.input)}))"
    if isinstance(stmt, MlPredictStmt):
        return (
            f"ML.PREDICT(MODEL {format_identifier(stmt.model)}, "
            f"({_format_select(stmt.input)}), {format_number(stmt.threshold)})"
        )
    if isinstance(stmt, MlFeatureImportanceStmt):
        return f"ML.FEATURE_IMPORTANCE(MODEL {format_identifier(stmt.model)})"
    if isinstance(stmt, MlRocCurveStmt):
        return f"ML.ROC_CURVE(MODEL {format_identifier(stmt.model)})"
    raise TypeError(f"unknown statement node {stmt!r}")
