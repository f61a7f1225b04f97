"""Evaluation of SELECT statements over catalog tables.

Semantics follow SQL three-valued logic: any comparison or arithmetic with
a NULL operand is NULL, and a NULL predicate excludes the row. Division is
always FLOAT64 and division by zero yields NULL. An aggregate-only
projection collapses to a single row; mixing aggregate and plain
projections is rejected because GROUP BY is out of scope.
"""

from __future__ import annotations

import math
from typing import Any, Optional

from .catalog import Catalog
from .errors import AggregateMixError, QueryTypeError, UnknownNameError
from .sql.ast_nodes import (
    AggregateCall,
    BinaryOp,
    CaseWhen,
    Coalesce,
    ColumnRef,
    Expr,
    IsNull,
    Literal,
    SelectStmt,
    Star,
    contains_aggregate,
)
from .table import ColumnType, Table

_NUMERIC = (int, float)


def _is_number(v: Any) -> bool:
    return isinstance(v, _NUMERIC) and not isinstance(v, bool)


def _arith(op: str, left: Any, right: Any) -> Any:
    if left is None or right is None:
        return None
    if not _is_number(left) or not _is_number(right):
        raise QueryTypeError(f"arithmetic '{op}' needs numeric operands, got {left!r} and {right!r}")
    if op == "+":
        return left + right
    if op == "-":
        return left - right
    if op == "*":
        return left * right
    # division: always FLOAT64, total on zero denominators
    if float(right) == 0.0:
        return None
    return float(left) / float(right)


def _compare(op: str, left: Any, right: Any) -> Optional[bool]:
    if left is None or right is None:
        return None
    if _is_number(left) != _is_number(right):
        raise QueryTypeError(f"cannot compare {left!r} with {right!r}")
    if op == "=":
        return left == right
    if op == "<>":
        return left != right
    if op == "<":
        return left < right
    if op == "<=":
        return left <= right
    if op == ">":
        return left > right
    return left >= right


class _RowScope:
    """Resolves column references against one row of a source table."""

    def __init__(self, table: Table):
        self.table = table
        self.row_index = 0

    def value(self, name: str) -> Any:
        return self.table.column(name)[self.row_index]


def eval_expr(expr: Expr, scope: _RowScope) -> Any:
    if isinstance(expr, Literal):
        return expr.value
    if isinstance(expr, ColumnRef):
        return scope.value(expr.name)
    if isinstance(expr, BinaryOp):
        left = eval_expr(expr.left, scope)
        right = eval_expr(expr.right, scope)
        if expr.op in ("+", "-", "*", "/"):
            return _arith(expr.op, left, right)
        return _compare(expr.op, left, right)
    if isinstance(expr, IsNull):
        is_null = eval_expr(expr.operand, scope) is None
        return (not is_null) if expr.negated else is_null
    if isinstance(expr, CaseWhen):
        for cond, result in expr.whens:
            taken = eval_expr(cond, scope)
            if taken is True:
                return eval_expr(result, scope)
            if taken is not None and not isinstance(taken, bool):
                raise QueryTypeError(f"CASE condition must be boolean, got {taken!r}")
        if expr.else_result is not None:
            return eval_expr(expr.else_result, scope)
        return None
    if isinstance(expr, Coalesce):
        for arg in expr.args:
            v = eval_expr(arg, scope)
            if v is not None:
                return v
        return None
    if isinstance(expr, Star):
        raise QueryTypeError("'*' is not a value expression")
    if isinstance(expr, AggregateCall):
        raise QueryTypeError("aggregate evaluated in row context")
    raise TypeError(f"unknown expression node {expr!r}")


# --- aggregates ---------------------------------------------------------------


def corr(xs: list, ys: list) -> Optional[float]:
    """Pearson correlation with pairwise NULL skipping.

    Returns None when fewer than 2 complete pairs survive or either side
    has zero variance.
    """
    pairs = [(x, y) for x, y in zip(xs, ys) if x is not None and y is not None]
    if len(pairs) < 2:
        return None
    for x, y in pairs:
        if not _is_number(x) or not _is_number(y):
            raise QueryTypeError("CORR needs numeric columns")
    n = len(pairs)
    mean_x = sum(x for x, _ in pairs) / n
    mean_y = sum(y for _, y in pairs) / n
    cov = sum((x - mean_x) * (y - mean_y) for x, y in pairs)
    var_x = sum((x - mean_x) ** 2 for x, _ in pairs)
    var_y = sum((y - mean_y) ** 2 for _, y in pairs)
    if var_x == 0.0 or var_y == 0.0:
        return None
    return cov / math.sqrt(var_x * var_y)


def _numeric_values(values: list, func: str) -> list:
    out = []
    for v in values:
        if v is None:
            continue
        if not _is_number(v):
            raise QueryTypeError(f"{func.upper()} needs a numeric argument, got {v!r}")
        out.append(v)
    return out


def _eval_aggregate(call: AggregateCall, table: Table, row_ids: list[int]) -> Any:
    scope = _RowScope(table)

    def column_of(arg: Expr) -> list:
        values = []
        for i in row_ids:
            scope.row_index = i
            values.append(eval_expr(arg, scope))
        return values

    if call.func == "count":
        if isinstance(call.args[0], Star):
            return len(row_ids)
        return sum(1 for v in column_of(call.args[0]) if v is not None)
    if call.func == "sum":
        values = _numeric_values(column_of(call.args[0]), "sum")
        return sum(values) if values else None
    if call.func == "avg":
        values = _numeric_values(column_of(call.args[0]), "avg")
        return sum(values) / len(values) if values else None
    # corr
    return corr(column_of(call.args[0]), column_of(call.args[1]))


# --- SELECT -------------------------------------------------------------------


def _filtered_row_ids(stmt: SelectStmt, table: Table) -> list[int]:
    if stmt.where is None:
        return list(range(table.row_count))
    if contains_aggregate(stmt.where):
        raise AggregateMixError("aggregates are not allowed in WHERE")
    scope = _RowScope(table)
    keep = []
    for i in range(table.row_count):
        scope.row_index = i
        verdict = eval_expr(stmt.where, scope)
        if verdict is True:
            keep.append(i)
        elif verdict is not None and not isinstance(verdict, bool):
            raise QueryTypeError(f"WHERE predicate must be boolean, got {verdict!r}")
    return keep


def _check_columns_exist(expr: Expr, table: Table) -> None:
    if isinstance(expr, ColumnRef):
        table.column_position(expr.name)  # raises UnknownNameError
    elif isinstance(expr, BinaryOp):
        _check_columns_exist(expr.left, table)
        _check_columns_exist(expr.right, table)
    elif isinstance(expr, IsNull):
        _check_columns_exist(expr.operand, table)
    elif isinstance(expr, CaseWhen):
        for cond, result in expr.whens:
            _check_columns_exist(cond, table)
            _check_columns_exist(result, table)
        if expr.else_result is not None:
            _check_columns_exist(expr.else_result, table)
    elif isinstance(expr, Coalesce):
        for arg in expr.args:
            _check_columns_exist(arg, table)
    elif isinstance(expr, AggregateCall):
        for arg in expr.args:
            if not isinstance(arg, Star):
                _check_columns_exist(arg, table)


def _materialize(value: Any) -> Any:
    # booleans are not a value type; surface them as INT64 0/1
    if isinstance(value, bool):
        return int(value)
    return value


def _column_type_of(values: list) -> ColumnType:
    has_float = False
    has_int = False
    has_str = False
    for v in values:
        if v is None:
            continue
        if isinstance(v, bool) or isinstance(v, int):
            has_int = True
        elif isinstance(v, float):
            has_float = True
        else:
            has_str = True
    if has_str and (has_int or has_float):
        raise QueryTypeError("column mixes string and numeric values")
    if has_str:
        return ColumnType.STRING
    if has_float:
        return ColumnType.FLOAT64
    if has_int:
        return ColumnType.INT64
    return ColumnType.STRING  # nothing to infer from


def _finalize_column(values: list) -> tuple[ColumnType, list]:
    ctype = _column_type_of(values)
    if ctype is ColumnType.FLOAT64:
        values = [float(v) if v is not None else None for v in values]
    return ctype, values


def execute_select(stmt: SelectStmt, catalog: Catalog) -> Table:
    """Run a SELECT against the catalog, returning an anonymous table."""
    table = catalog.table(stmt.table)

    for expr, _ in stmt.projections:
        if not isinstance(expr, Star):
            _check_columns_exist(expr, table)
    if stmt.where is not None:
        _check_columns_exist(stmt.where, table)

    has_aggregate = any(
        not isinstance(expr, Star) and contains_aggregate(expr) for expr, _ in stmt.projections
    )
    has_plain = any(
        isinstance(expr, Star) or not contains_aggregate(expr) for expr, _ in stmt.projections
    )
    if has_aggregate and has_plain:
        raise AggregateMixError("cannot mix aggregate and non-aggregate projections without GROUP BY")

    row_ids = _filtered_row_ids(stmt, table)

    columns: list[tuple[str, ColumnType]] = []
    cells: list[list] = []

    if has_aggregate:
        for pos, (expr, alias) in enumerate(stmt.projections):
            value = _materialize(_eval_aggregate_tree(expr, table, row_ids))
            ctype, values = _finalize_column([value])
            columns.append((alias or _default_name(expr, pos), ctype))
            cells.append(values)
        return Table("", columns, cells)

    scope = _RowScope(table)
    for pos, (expr, alias) in enumerate(stmt.projections):
        if isinstance(expr, Star):
            for (name, ctype), col in zip(table.columns, table.cells):
                columns.append((name, ctype))
                cells.append([col[i] for i in row_ids])
            continue
        if isinstance(expr, ColumnRef) and alias is None:
            # preserve the source column's declared name and type
            j = table.column_position(expr.name)
            columns.append(table.columns[j])
            cells.append([table.cells[j][i] for i in row_ids])
            continue
        values = []
        for i in row_ids:
            scope.row_index = i
            values.append(_materialize(eval_expr(expr, scope)))
        ctype, values = _finalize_column(values)
        columns.append((alias or _default_name(expr, pos), ctype))
        cells.append(values)

    return _dedupe_columns(columns, cells)


def _eval_aggregate_tree(expr: Expr, table: Table, row_ids: list[int]) -> Any:
    """Evaluate a projection that contains aggregates (possibly in arithmetic)."""
    if isinstance(expr, AggregateCall):
        return _eval_aggregate(expr, table, row_ids)
    if isinstance(expr, BinaryOp):
        left = _eval_aggregate_tree(expr.left, table, row_ids)
        right = _eval_aggregate_tree(expr.right, table, row_ids)
        if expr.op in ("+", "-", "*", "/"):
            return _arith(expr.op, left, right)
        return _compare(expr.op, left, right)
    if isinstance(expr, Literal):
        return expr.value
    raise AggregateMixError("aggregate projections may only combine aggregates and literals")


def _default_name(expr: Expr, position: int) -> str:
    if isinstance(expr, ColumnRef):
        return expr.name
    return f"f{position}_"


def _dedupe_columns(columns: list[tuple[str, ColumnType]], cells: list[list]) -> Table:
    seen: dict[str, int] = {}
    renamed = []
    for name, ctype in columns:
        key = name.lower()
        if key in seen:
            seen[key] += 1
            name = f"{name}_{seen[key]}"
        else:
            seen[key] = 0
        renamed.append((name, ctype))
    return Table("", renamed, cells)


__all__ = ["execute_select", "corr", "eval_expr"]
