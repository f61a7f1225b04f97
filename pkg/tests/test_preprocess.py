import numpy as np
import pytest

from minibqml.errors import EmptyInputError, LabelError, SchemaError
from minibqml.preprocess import TableVectorizer, standardize_for_model_type
from minibqml.table import ColumnType

from conftest import make_table


def fit_on(spec, label="y", standardize=True, **kwargs):
    table = make_table("train", spec)
    vec = TableVectorizer(label_col=label, standardize=standardize, **kwargs)
    return vec.fit(table), table


def test_impute_value_is_mean_of_observed():
    vec, _ = fit_on({"x": [1.0, None, 3.0], "y": [0, 1, 0]})
    mean, std, impute = vec.numeric_stats_["x"]
    assert impute == 2.0
    assert mean == 2.0


def test_standardize_flag_per_model_type():
    assert standardize_for_model_type("logistic_reg") is True
    assert standardize_for_model_type("dnn_classifier") is True
    assert standardize_for_model_type("boosted_tree_classifier") is False
    assert TableVectorizer.for_model_type("y", "boosted_tree_classifier").standardize is False


def test_label_guards():
    with pytest.raises(LabelError):
        fit_on({"x": [1.0, 2.0], "y": [0, 2]})  # non-binary value
    with pytest.raises(LabelError):
        fit_on({"x": [1.0, 2.0], "y": [1, 1]})  # single class
    with pytest.raises(LabelError):
        fit_on({"x": [1.0, 2.0], "y": ["a", "b"]})  # string label
    with pytest.raises(LabelError):
        fit_on({"x": [1.0, 2.0]}, label="missing")
    with pytest.raises(EmptyInputError):
        fit_on({"x": [], "y": []})


def test_two_point_standardization():
    vec, _ = fit_on({"x": [0.0, 2.0], "y": [0, 1]})
    table = make_table("in", {"x": [0.0, 2.0], "y": [0, 1]})
    X = vec.transform(table)
    assert X[:, 0].tolist() == [-1.0, 1.0]


def test_training_matrix_is_standardized():
    rng = np.random.default_rng(5)
    n = 500
    table = make_table(
        "train",
        {
            "a": rng.normal(50.0, 20.0, size=n).tolist(),
            "b": rng.uniform(-3.0, 9.0, size=n).tolist(),
            "wide_int": [int(v) for v in rng.integers(0, 10_000, size=n)],
            "y": [int(v) for v in rng.integers(0, 2, size=n)],
        },
    )
    vec = TableVectorizer(label_col="y", standardize=True).fit(table)
    X = vec.transform(table)
    numeric = [s for s in vec.feature_layout_ if s.kind == "numeric"]
    assert len(numeric) == 3
    for span in numeric:
        col = X[:, span.start]
        assert abs(col.mean()) < 1e-9
        assert abs(col.std() - 1.0) < 1e-9


def test_one_hot_rows_sum_to_one():
    vec, table = fit_on(
        {"g": ["a", "b", None, "a", "c"], "y": [0, 1, 0, 1, 0]}, standardize=False
    )
    X = vec.transform(table)
    span = vec.feature_layout_[0]
    assert span.width == 4  # {a, b, c} + MISSING
    assert np.all(X[:, span.start : span.start + span.width].sum(axis=1) == 1.0)


def test_null_and_unseen_go_to_missing_bucket():
    vec, _ = fit_on({"g": ["a", "b", "a", "b"], "y": [0, 1, 0, 1]}, standardize=False)
    out = vec.transform(make_table("in", {"g": [None, "zz", "a"], "y": [0, 1, 0]}))
    span = vec.feature_layout_[0]
    missing = span.start + span.width - 1
    assert out[0, missing] == 1.0 and out[0, span.start : missing].sum() == 0.0
    assert out[1, missing] == 1.0
    assert out[2, span.start] == 1.0 and out[2, missing] == 0.0


def test_output_width_formula():
    vec, _ = fit_on(
        {
            "num": [0.5, 1.5, 2.5, 3.5],
            "flag": [0, 1, 0, 1],
            "cat": ["x", "y", "z", "x"],
            "y": [0, 1, 0, 1],
        },
        standardize=False,
    )
    # 1 numeric + (2 distinct + 1) + (3 distinct + 1)
    assert vec.output_width_ == 1 + 3 + 4
    assert vec.output_width_ == sum(s.width for s in vec.feature_layout_)


def test_constant_column_stddev_recorded_as_one():
    vec, table = fit_on({"c": [7.0, 7.0, 7.0], "y": [0, 1, 0]})
    mean, std, _ = vec.numeric_stats_["c"]
    assert std == 1.0
    X = vec.transform(table)
    assert np.all(X[:, vec.feature_layout_[0].start] == 0.0)
    assert np.all(np.isfinite(X))


def test_int_categorical_threshold():
    spec = {
        "code13": [int(v) for v in np.arange(130) % 13 + 1],
        "code14": [int(v) for v in np.arange(130) % 14 + 1],
        "y": [int(v) for v in np.arange(130) % 2],
    }
    vec, _ = fit_on(spec, standardize=False)
    kinds = {s.column: s.kind for s in vec.feature_layout_}
    assert kinds["code13"] == "categorical"  # 13 distinct values
    assert kinds["code14"] == "numeric"  # 14 distinct values
    assert vec.vocabularies_["code13"] == list(range(1, 14))  # sorted vocabulary


def test_float_columns_always_numeric():
    vec, _ = fit_on({"f": [0.0, 1.0, 0.0, 1.0], "y": [0, 1, 0, 1]})
    assert vec.feature_layout_[0].kind == "numeric"


def test_no_nulls_survive():
    vec, _ = fit_on(
        {"num": [1.0, None, 5.0], "cat": ["a", None, "b"], "y": [0, 1, 1]}, standardize=False
    )
    out = vec.transform(make_table("in", {"num": [None, 9.0], "cat": [None, "a"], "y": [0, 1]}))
    assert np.all(np.isfinite(out))


def test_transform_commutes_with_permutation():
    rng = np.random.default_rng(3)
    table = make_table(
        "t",
        {
            "num": rng.normal(size=40).tolist(),
            "cat": [str(v) for v in rng.integers(0, 4, size=40)],
            "y": [int(v) for v in rng.integers(0, 2, size=40)],
        },
    )
    vec = TableVectorizer(label_col="y", standardize=True).fit(table)
    perm = rng.permutation(40).tolist()
    assert np.array_equal(vec.transform(table)[perm], vec.transform(table.take(perm)))


def test_schema_mismatch():
    vec, _ = fit_on({"x": [1.0, 2.0], "y": [0, 1]})
    with pytest.raises(SchemaError):
        vec.transform(make_table("in", {"other": [1.0], "y": [0]}))
    with pytest.raises(SchemaError):
        vec.transform(make_table("in", {"x": ["s"], "y": [0]}))  # type changed


def test_label_vector_optional_at_predict_time():
    vec, _ = fit_on({"x": [1.0, 2.0], "y": [0, 1]})
    assert vec.label_vector(make_table("in", {"x": [3.0]})) is None
    got = vec.label_vector(make_table("in", {"x": [3.0, 4.0], "y": [1, 0]}))
    assert got.tolist() == [1.0, 0.0]


def test_extra_columns_are_ignored():
    vec, _ = fit_on({"x": [1.0, 2.0], "y": [0, 1]})
    out = vec.transform(make_table("in", {"x": [3.0], "extra": ["hi"], "y": [0]}))
    assert out.shape == (1, 1)


def test_state_dict_round_trip():
    vec, table = fit_on(
        {
            "num": [1.5, None, 2.5, 4.0],
            "flag": [0, 1, 1, 0],
            "cat": ["a", "b", None, "a"],
            "y": [0, 1, 0, 1],
        },
        standardize=True,
    )
    restored = TableVectorizer.from_state_dict(vec.state_dict())
    assert np.array_equal(vec.transform(table), restored.transform(table))
    assert restored.feature_names_out_ == vec.feature_names_out_
    assert restored.output_width_ == vec.output_width_
