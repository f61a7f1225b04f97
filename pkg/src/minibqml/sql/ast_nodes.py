"""AST node types for the SQL dialect.

Expressions and statements are frozen dataclasses so parsed trees compare
structurally, which is what the parse/pretty-print round-trip tests rely on.
Numeric literals always carry ``float`` values. ``Literal(None)`` is NULL.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

AGGREGATE_FUNCS = frozenset({"count", "sum", "avg", "corr"})


# --- expressions ------------------------------------------------------------

@dataclass(frozen=True)
class ColumnRef:
    name: str


@dataclass(frozen=True)
class Literal:
    value: Union[float, str, None]


@dataclass(frozen=True)
class BinaryOp:
    op: str  # one of = <> < <= > >= + - * /
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class IsNull:
    operand: "Expr"
    negated: bool = False


@dataclass(frozen=True)
class CaseWhen:
    whens: tuple[tuple["Expr", "Expr"], ...]
    else_result: Optional["Expr"] = None


@dataclass(frozen=True)
class Coalesce:
    args: tuple["Expr", ...]


@dataclass(frozen=True)
class AggregateCall:
    func: str  # count | sum | avg | corr (lowercase)
    args: tuple["Expr", ...]  # COUNT(*) carries (Star(),)


@dataclass(frozen=True)
class Star:
    pass


Expr = Union[ColumnRef, Literal, BinaryOp, IsNull, CaseWhen, Coalesce, AggregateCall, Star]


def contains_aggregate(expr: Expr) -> bool:
    if isinstance(expr, AggregateCall):
        return True
    if isinstance(expr, BinaryOp):
        return contains_aggregate(expr.left) or contains_aggregate(expr.right)
    if isinstance(expr, IsNull):
        return contains_aggregate(expr.operand)
    if isinstance(expr, CaseWhen):
        branches = [e for pair in expr.whens for e in pair]
        if expr.else_result is not None:
            branches.append(expr.else_result)
        return any(contains_aggregate(e) for e in branches)
    if isinstance(expr, Coalesce):
        return any(contains_aggregate(a) for a in expr.args)
    return False


# --- statements -------------------------------------------------------------

@dataclass(frozen=True)
class SelectStmt:
    projections: tuple[tuple[Expr, Optional[str]], ...]  # (expr, alias)
    table: str
    where: Optional[Expr] = None


@dataclass(frozen=True, eq=True)
class CreateModelStmt:
    name: str
    replace: bool
    options: dict  # validated key -> canonical value, insertion-ordered
    query: SelectStmt

    def __hash__(self):
        return hash((self.name, self.replace, tuple(self.options.items()), self.query))


@dataclass(frozen=True)
class CreateTableFromCsvStmt:
    name: str
    path: str
    replace: bool = False


@dataclass(frozen=True)
class MlEvaluateStmt:
    model: str
    input: Optional[SelectStmt] = None


@dataclass(frozen=True)
class MlPredictStmt:
    model: str
    input: SelectStmt
    threshold: float = 0.5


@dataclass(frozen=True)
class MlFeatureImportanceStmt:
    model: str


@dataclass(frozen=True)
class MlRocCurveStmt:
    model: str


Statement = Union[
    SelectStmt,
    CreateModelStmt,
    CreateTableFromCsvStmt,
    MlEvaluateStmt,
    MlPredictStmt,
    MlFeatureImportanceStmt,
    MlRocCurveStmt,
]
