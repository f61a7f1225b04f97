import os
from pathlib import Path

import numpy as np
import pytest

from minibqml.table import ColumnType, Table

# Candidate locations for the public diabetes health-indicators CSV
# (70,692 rows, 21 features + Diabetes_binary). Quantitative acceptance
# tests skip when it is absent.
BRFSS_ENV_VAR = "MINIBQML_BRFSS_CSV"
BRFSS_FILENAME = "diabetes_binary_5050split_health_indicators_BRFSS2015.csv"


def brfss_csv_path():
    env = os.environ.get(BRFSS_ENV_VAR)
    if env:
        return Path(env)
    return Path(__file__).resolve().parent.parent / "data" / BRFSS_FILENAME


def brfss_available() -> bool:
    return brfss_csv_path().is_file()


requires_brfss = pytest.mark.skipif(
    not brfss_available(),
    reason=f"diabetes dataset not found (set {BRFSS_ENV_VAR} or place the CSV under data/)",
)


def make_table(name: str, spec: dict) -> Table:
    """Build a table from {column: list}; types inferred from the values."""
    columns = []
    cells = []
    for col_name, values in spec.items():
        non_null = [v for v in values if v is not None]
        if all(isinstance(v, int) for v in non_null) and non_null:
            ctype = ColumnType.INT64
        elif all(isinstance(v, (int, float)) for v in non_null) and non_null:
            ctype = ColumnType.FLOAT64
            values = [float(v) if v is not None else None for v in values]
        else:
            ctype = ColumnType.STRING
        columns.append((col_name, ctype))
        cells.append(list(values))
    return Table(name, columns, cells)


def synthetic_classification(seed: int, n: int = 400, informative: int = 3, noise: float = 0.8):
    """Small learnable binary problem: (X, y) float64 arrays."""
    rng = np.random.default_rng(seed)
    d = informative + 2
    X = rng.normal(size=(n, d))
    w = np.concatenate([rng.uniform(0.8, 1.6, size=informative), np.zeros(2)])
    margins = X @ w + rng.normal(scale=noise, size=n)
    y = (margins > np.median(margins)).astype(np.float64)
    return X, y
