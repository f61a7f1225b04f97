import math

import pytest

from minibqml.catalog import Catalog
from minibqml.errors import AggregateMixError, QueryTypeError, UnknownNameError
from minibqml.executor import corr, execute_select
from minibqml.sql import parse_statement
from minibqml.table import ColumnType

from conftest import make_table


@pytest.fixture
def catalog():
    cat = Catalog()
    cat.register_table(
        make_table(
            "t",
            {
                "Diabetes_binary": [1, 0, None, 1, 0],
                "age": [30, None, 41, 50, 29],
                "gender": ["Male", "Female", "Male", None, "Female"],
                "bmi": [22.5, 31.0, 27.5, None, 24.0],
            },
        )
    )
    return cat


def run(catalog, sql):
    return execute_select(parse_statement(sql), catalog)


def test_select_star_is_identity(catalog):
    source = catalog.table("t")
    result = run(catalog, "SELECT * FROM t")
    assert result.columns == source.columns
    assert result.cells == source.cells


def test_is_not_null_filter(catalog):
    result = run(catalog, "SELECT * FROM t WHERE Diabetes_binary IS NOT NULL")
    assert result.row_count == 4
    assert None not in result.column("Diabetes_binary")


def test_case_when_gender(catalog):
    result = run(
        catalog,
        "SELECT CASE WHEN gender = 'Male' THEN 1 ELSE 0 END AS gender_male FROM t",
    )
    # NULL gender: the comparison is NULL, the WHEN is not taken, ELSE fires
    assert result.column("gender_male") == [1, 0, 1, 0, 0]


def test_coalesce_imputation(catalog):
    result = run(catalog, "SELECT COALESCE(age, 50) AS age_imputed FROM t")
    assert result.column("age_imputed") == [30, 50, 41, 50, 29]


def test_coalesce_example_two_rows():
    cat = Catalog()
    cat.register_table(make_table("u", {"age": [30, None]}))
    assert run(cat, "SELECT COALESCE(age, 50) AS age_imputed FROM u").column("age_imputed") == [30, 50]


# --- corr ------------------------------------------------------------------


def test_corr_perfect_self():
    assert corr([1, 2, 3], [1, 2, 3]) == pytest.approx(1.0)


def test_corr_perfect_anti():
    assert corr([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0)


def test_corr_hand_computed():
    # cov*n = 5.5, var_x*n = 5, var_y*n = 8.75 -> r = 5.5/sqrt(43.75) = 11/(5*sqrt(7))
    expected = 11.0 / (5.0 * math.sqrt(7.0))
    assert corr([1, 2, 3, 4], [1, 3, 2, 5]) == pytest.approx(expected, abs=1e-12)


def test_corr_symmetry_and_affine():
    x = [1.0, 4.0, 2.0, 7.0, 5.0]
    y = [2.0, 1.0, 6.0, 3.0, 9.0]
    assert corr(x, y) == pytest.approx(corr(y, x), abs=1e-15)
    assert corr(x, [3.0 * v + 1.0 for v in x]) == pytest.approx(1.0)
    assert corr(x, [-2.0 * v + 5.0 for v in x]) == pytest.approx(-1.0)


def test_corr_null_handling():
    assert corr([1, None, 3, 4], [None, 2, 3, 5]) == corr([3, 4], [3, 5])
    assert corr([1, None], [1, 2]) is None  # one surviving pair
    assert corr([2, 2, 2], [1, 2, 3]) is None  # zero variance


def test_corr_over_string_column(catalog):
    with pytest.raises(QueryTypeError):
        run(catalog, "SELECT CORR(gender, age) FROM t")


def test_corr_in_query(catalog):
    result = run(catalog, "SELECT CORR(age, bmi) AS c FROM t")
    assert result.row_count == 1
    expected = corr(catalog.table("t").column("age"), catalog.table("t").column("bmi"))
    assert result.column("c") == [expected]


# --- aggregates ---------------------------------------------------------------


def test_aggregate_only_single_row(catalog):
    result = run(catalog, "SELECT COUNT(*) AS n, COUNT(age) AS n_age, SUM(age) AS s, AVG(bmi) AS m FROM t")
    assert result.row_count == 1
    assert result.column("n") == [5]
    assert result.column("n_age") == [4]
    assert result.column("s") == [30 + 41 + 50 + 29]
    assert result.column("m") == [pytest.approx((22.5 + 31.0 + 27.5 + 24.0) / 4)]


def test_aggregate_respects_where(catalog):
    result = run(catalog, "SELECT COUNT(*) AS n FROM t WHERE Diabetes_binary IS NOT NULL")
    assert result.column("n") == [4]


def test_empty_aggregates_are_null():
    cat = Catalog()
    cat.register_table(make_table("e", {"x": [None, None]}))
    result = run(cat, "SELECT SUM(x) AS s, AVG(x) AS a, COUNT(x) AS c FROM e")
    assert result.column("s") == [None]
    assert result.column("a") == [None]
    assert result.column("c") == [0]


def test_mixed_projection_rejected(catalog):
    with pytest.raises(AggregateMixError):
        run(catalog, "SELECT age, COUNT(*) FROM t")
    with pytest.raises(AggregateMixError):
        run(catalog, "SELECT *, COUNT(*) FROM t")


# --- null semantics -------------------------------------------------------------


def test_predicate_partition(catalog):
    total = run(catalog, "SELECT * FROM t").row_count
    true_side = run(catalog, "SELECT * FROM t WHERE age > 30").row_count
    false_side = run(catalog, "SELECT * FROM t WHERE age <= 30").row_count
    null_side = run(catalog, "SELECT * FROM t WHERE age IS NULL").row_count
    assert true_side + false_side + null_side == total


def test_null_arithmetic_propagates(catalog):
    result = run(catalog, "SELECT age + 1 AS a1, age * 2 AS a2 FROM t")
    assert result.column("a1")[1] is None
    assert result.column("a2")[1] is None


def test_division_semantics(catalog):
    result = run(catalog, "SELECT age / 0 AS z, age / 2 AS h FROM t")
    assert result.column("z") == [None] * 5
    assert result.column("h")[0] == pytest.approx(15.0)
    assert result.column_type("h") is ColumnType.FLOAT64


def test_int_arithmetic_stays_int():
    cat = Catalog()
    cat.register_table(make_table("n", {"a": [2, 4], "b": [3, 5]}))
    result = run(cat, "SELECT a + b AS s, a * b AS p FROM n")
    assert result.column_type("s") is ColumnType.INT64
    assert result.column("s") == [5, 9]
    assert result.column("p") == [6, 20]


def test_int_float_promotion():
    cat = Catalog()
    cat.register_table(make_table("n", {"a": [2, 4], "b": [0.5, 1.5]}))
    result = run(cat, "SELECT a + b AS s FROM n")
    assert result.column_type("s") is ColumnType.FLOAT64
    assert result.column("s") == [2.5, 5.5]


def test_string_numeric_comparison_rejected(catalog):
    with pytest.raises(QueryTypeError):
        run(catalog, "SELECT * FROM t WHERE gender = 1")


def test_unknown_names(catalog):
    with pytest.raises(UnknownNameError):
        run(catalog, "SELECT * FROM nope")
    with pytest.raises(UnknownNameError):
        run(catalog, "SELECT missing_col FROM t")
    with pytest.raises(UnknownNameError):
        run(catalog, "SELECT * FROM t WHERE missing_col IS NULL")


def test_row_order_preserved(catalog):
    result = run(catalog, "SELECT age FROM t WHERE age > 0")
    assert result.column("age") == [30, 41, 50, 29]


def test_boolean_projection_as_int(catalog):
    result = run(catalog, "SELECT age > 30 AS old FROM t")
    assert result.column_type("old") is ColumnType.INT64
    assert result.column("old") == [0, None, 1, 1, 0]


def test_duplicate_projection_names_are_deduped(catalog):
    result = run(catalog, "SELECT age, age FROM t")
    assert result.column_names == ["age", "age_1"]
