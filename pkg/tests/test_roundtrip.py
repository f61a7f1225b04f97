"""Parse/pretty-print round-trip over a generated statement corpus."""

import random

import pytest

from minibqml.sql import parse_statement, pretty_print
from minibqml.sql.ast_nodes import (
    AggregateCall,
    BinaryOp,
    CaseWhen,
    Coalesce,
    ColumnRef,
    CreateModelStmt,
    CreateTableFromCsvStmt,
    IsNull,
    Literal,
    MlEvaluateStmt,
    MlFeatureImportanceStmt,
    MlPredictStmt,
    MlRocCurveStmt,
    SelectStmt,
    Star,
)

from queries import ALL_REFERENCE_QUERIES

CORPUS_SIZE = 1000

# no literal dots: a backticked dotted name is a qualified path in this dialect
_NAMES = ["t", "diabetes_data", "Mixed_Case", "select", "a b", "_tab1", "αβ"]
_COLUMNS = ["age", "BMI", "gender", "Diabetes_binary", "x1", "end", "weird col"]
_STRINGS = ["Male", "it's", "", "semi;colon", "two  spaces", "--not a comment"]
_NUMBERS = [0.0, 1.0, 50.0, -3.0, 0.2, 1e-05, 123456.75, -0.125, 2e16]


class _Generator:
    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def pick(self, items):
        return items[self.rng.randrange(len(items))]

    def literal(self):
        kind = self.rng.random()
        if kind < 0.45:
            return Literal(self.pick(_NUMBERS))
        if kind < 0.8:
            return Literal(self.pick(_STRINGS))
        return Literal(None)

    def scalar_expr(self, depth: int):
        if depth <= 0 or self.rng.random() < 0.35:
            return self.pick([self.literal(), ColumnRef(self.pick(_COLUMNS))])
        kind = self.rng.randrange(5)
        if kind == 0:
            op = self.pick(["+", "-", "*", "/", "=", "<>", "<", "<=", ">", ">="])
            return BinaryOp(op, self.scalar_expr(depth - 1), self.scalar_expr(depth - 1))
        if kind == 1:
            return IsNull(self.scalar_expr(depth - 1), self.rng.random() < 0.5)
        if kind == 2:
            whens = tuple(
                (self.scalar_expr(depth - 1), self.scalar_expr(depth - 1))
                for _ in range(self.rng.randrange(1, 3))
            )
            else_result = self.scalar_expr(depth - 1) if self.rng.random() < 0.6 else None
            return CaseWhen(whens, else_result)
        if kind == 3:
            args = tuple(self.scalar_expr(depth - 1) for _ in range(self.rng.randrange(1, 4)))
            return Coalesce(args)
        return self.scalar_expr(depth - 1)

    def aggregate(self):
        func = self.pick(["count", "sum", "avg", "corr"])
        if func == "corr":
            return AggregateCall(func, (self.scalar_expr(1), self.scalar_expr(1)))
        if func == "count" and self.rng.random() < 0.4:
            return AggregateCall(func, (Star(),))
        return AggregateCall(func, (self.scalar_expr(1),))

    def alias(self):
        return self.pick([None, "alias_a", "AliasB", "from"])

    def select(self):
        table = self.pick(_NAMES)
        where = self.scalar_expr(2) if self.rng.random() < 0.6 else None
        if self.rng.random() < 0.25:
            projections = tuple(
                (self.aggregate(), self.alias()) for _ in range(self.rng.randrange(1, 4))
            )
        else:
            projections = []
            for _ in range(self.rng.randrange(1, 4)):
                if self.rng.random() < 0.25:
                    projections.append((Star(), None))
                else:
                    projections.append((self.scalar_expr(2), self.alias()))
            projections = tuple(projections)
        return SelectStmt(projections, table, where)

    def options(self):
        opts = {
            "model_type": self.pick(["logistic_reg", "boosted_tree_classifier", "dnn_classifier"]),
            "input_label_cols": (self.pick(_COLUMNS),),
        }
        extras = {
            "data_split_method": lambda: self.pick(["RANDOM", "NO_SPLIT"]),
            "data_split_eval_fraction": lambda: self.pick([0.2, 0.25, 0.5]),
            "max_iterations": lambda: self.rng.randrange(1, 300),
            "learn_rate": lambda: self.pick([0.05, 0.1, 0.3, 1.0]),
            "min_rel_progress": lambda: self.pick([1e-05, 0.01, 0.5]),
            "l1_reg": lambda: self.pick([0.0, 0.1, 10.0]),
            "l2_reg": lambda: self.pick([0.0, 1.0, 2.0]),
            "max_tree_depth": lambda: self.rng.randrange(1, 10),
            "hidden_units": lambda: tuple(self.rng.randrange(1, 65) for _ in range(self.rng.randrange(0, 3))),
            "batch_size": lambda: self.pick([32, 256]),
            "seed": lambda: self.rng.randrange(0, 1000),
        }
        for key, make in extras.items():
            if self.rng.random() < 0.4:
                opts[key] = make()
        return opts

    def statement(self):
        kind = self.rng.randrange(10)
        if kind <= 3:
            return self.select()
        if kind <= 5:
            return CreateModelStmt(
                self.pick(_NAMES), self.rng.random() < 0.5, self.options(), self.select()
            )
        if kind == 6:
            return CreateTableFromCsvStmt(self.pick(_NAMES), self.pick(["a.csv", "dir/b.csv"]),
                                          self.rng.random() < 0.5)
        if kind == 7:
            query = self.select() if self.rng.random() < 0.5 else None
            return MlEvaluateStmt(self.pick(_NAMES), query)
        if kind == 8:
            return MlPredictStmt(self.pick(_NAMES), self.select(), self.pick([0.5, 0.25, 0.9]))
        return self.pick([MlFeatureImportanceStmt(self.pick(_NAMES)),
                          MlRocCurveStmt(self.pick(_NAMES))])


def test_generated_corpus_is_a_fixed_point():
    gen = _Generator(seed=20240811)
    for i in range(CORPUS_SIZE):
        ast = gen.statement()
        text = pretty_print(ast)
        reparsed = parse_statement(text)
        assert reparsed == ast, f"corpus item {i}: {text!r}"
        # fixed point: printing the reparsed tree reproduces the text
        assert pretty_print(reparsed) == text, f"corpus item {i}"


def test_reference_queries_round_trip():
    for query in ALL_REFERENCE_QUERIES:
        first = parse_statement(query)
        second = parse_statement(pretty_print(first))
        assert first == second


def test_minimal_select_prints_canonically():
    assert pretty_print(parse_statement("select * from t")) == "SELECT * FROM t"


@pytest.mark.parametrize(
    "text",
    [
        "SELECT a + (b * c) FROM t",
        "SELECT (a + b) * c FROM t",
        "SELECT (a = b) IS NULL FROM t",
        "SELECT COALESCE(NULL, 'x') FROM `select`",
    ],
)
def test_nested_expressions_round_trip(text):
    first = parse_statement(text)
    assert parse_statement(pretty_print(first)) == first
