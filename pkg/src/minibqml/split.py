"""Seeded random train/eval row partitioning."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SplitError
from .table import Table


@dataclass
class SplitResult:
    train_rows: Table
    eval_rows: Table
    seed_used: int


def split_random(table: Table, eval_fraction: float, seed: int) -> SplitResult:
    """Deterministic shuffle split: the first floor(n * eval_fraction)
    shuffled rows form the eval set, the rest the train set."""
    if not 0.0 < eval_fraction < 1.0:
        raise SplitError(f"eval_fraction must be in (0, 1), got {eval_fraction}")
    n = table.row_count
    k = math.floor(n * eval_fraction)
    if k == 0 or k == n:
        raise SplitError(
            f"split of {n} rows at eval_fraction={eval_fraction} would leave one side empty"
        )
    perm = np.random.default_rng(seed).permutation(n)
    eval_ids = perm[:k].tolist()
    train_ids = perm[k:].tolist()
    return SplitResult(
        train_rows=table.take(train_ids),
        eval_rows=table.take(eval_ids),
        seed_used=seed,
    )
