import pytest

from minibqml.catalog import Catalog
from minibqml.csvio import infer_column_type, load_csv, write_csv
from minibqml.errors import CatalogError, CsvError, IoError, SchemaError, UnknownNameError
from minibqml.table import ColumnType, Table

from conftest import make_table


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_mixed_inference(tmp_path):
    path = write(tmp_path, "t.csv", "x,y,z\n1,,a\n,2.5,b\n2.5,3,\n")
    table = load_csv(path, "t")
    assert table.columns == [
        ("x", ColumnType.FLOAT64),
        ("y", ColumnType.FLOAT64),
        ("z", ColumnType.STRING),
    ]
    assert table.column("x") == [1.0, None, 2.5]
    assert table.column("y") == [None, 2.5, 3.0]
    assert table.column("z") == ["a", "b", None]


def test_integer_column(tmp_path):
    path = write(tmp_path, "t.csv", "n\n1\n-2\n\n30\n")
    table = load_csv(path, "t")
    assert table.column_type("n") is ColumnType.INT64
    assert table.column("n") == [1, -2, None, 30]


def test_header_only_file(tmp_path):
    path = write(tmp_path, "t.csv", "a,b\n")
    table = load_csv(path, "t")
    assert table.row_count == 0
    assert [t for _, t in table.columns] == [ColumnType.STRING, ColumnType.STRING]


def test_ragged_row_reports_row_number(tmp_path):
    path = write(tmp_path, "t.csv", "a,b\n1,2\n3\n")
    with pytest.raises(CsvError) as exc:
        load_csv(path, "t")
    assert exc.value.row == 3


def test_unreadable_file():
    with pytest.raises(IoError):
        load_csv("/nonexistent/nowhere.csv", "t")


def test_quoting_with_escapes(tmp_path):
    path = write(tmp_path, "t.csv", 'a,b\n"x,y","he said ""hi"""\n')
    table = load_csv(path, "t")
    assert table.row(0) == ("x,y", 'he said "hi"')


def test_nan_and_inf_strings_stay_strings():
    assert infer_column_type(["nan", "1"]) is ColumnType.STRING
    assert infer_column_type(["inf"]) is ColumnType.STRING
    assert infer_column_type(["1e5", "2"]) is ColumnType.FLOAT64


def test_inference_is_order_independent():
    fields = ["1", "", "2.5", "7", ""]
    base = infer_column_type(fields)
    assert base is ColumnType.FLOAT64
    assert infer_column_type(list(reversed(fields))) is base
    assert infer_column_type(fields[2:] + fields[:2]) is base


def test_ingest_export_identity(tmp_path):
    source = write(
        tmp_path,
        "t.csv",
        'i,f,s\n1,0.1,alpha\n,2.5,"with,comma"\n-7,,"quote""d"\n',
    )
    table = load_csv(source, "t")
    out = tmp_path / "out.csv"
    write_csv(table, out)
    reloaded = load_csv(out, "t")
    assert reloaded.same_cells(table)


def test_export_float_precision_round_trips(tmp_path):
    table = make_table("t", {"x": [0.1, 1e-17, 123456789.123456789, None]})
    out = tmp_path / "x.csv"
    write_csv(table, out)
    assert load_csv(out, "t").column("x") == table.column("x")


def test_catalog_duplicate_table():
    catalog = Catalog()
    catalog.register_table(make_table("T", {"a": [1]}))
    with pytest.raises(CatalogError):
        catalog.register_table(make_table("t", {"a": [2]}))
    catalog.register_table(make_table("t", {"a": [2]}), replace=True)
    assert catalog.table("T").column("a") == [2]


def test_catalog_lookup_case_insensitive():
    catalog = Catalog()
    catalog.register_table(make_table("Diabetes_Data", {"a": [1]}))
    assert catalog.table("diabetes_data").name == "Diabetes_Data"
    with pytest.raises(UnknownNameError):
        catalog.table("missing")


def test_table_rejects_duplicate_columns():
    with pytest.raises(SchemaError):
        Table("t", [("a", ColumnType.INT64), ("A", ColumnType.INT64)], [[1], [2]])


def test_table_rejects_uneven_columns():
    with pytest.raises(SchemaError):
        Table("t", [("a", ColumnType.INT64), ("b", ColumnType.INT64)], [[1], [2, 3]])
