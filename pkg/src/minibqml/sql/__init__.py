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
    contains_aggregate,
)
from .lexer import Token, TokenKind, tokenize
from .options import RECOGNIZED_KEYS, validate_option, validate_options
from .parser import ScriptStatement, parse_script, parse_statement
from .printer import pretty_print

__all__ = [
    "AggregateCall",
    "BinaryOp",
    "CaseWhen",
    "Coalesce",
    "ColumnRef",
    "CreateModelStmt",
    "CreateTableFromCsvStmt",
    "Expr",
    "IsNull",
    "Literal",
    "MlEvaluateStmt",
    "MlFeatureImportanceStmt",
    "MlPredictStmt",
    "MlRocCurveStmt",
    "ScriptStatement",
    "SelectStmt",
    "Star",
    "Statement",
    "Token",
    "TokenKind",
    "RECOGNIZED_KEYS",
    "contains_aggregate",
    "parse_script",
    "parse_statement",
    "pretty_print",
    "tokenize",
    "validate_option",
    "validate_options",
]
