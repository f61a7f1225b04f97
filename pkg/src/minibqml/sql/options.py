"""Model option keys, domains, and validation.

Parsed option values arrive as raw literals (floats, strings, or tuples of
either) and are coerced into canonical Python values here: integer-valued
options become ``int``, list options become tuples. Unknown keys and
out-of-domain values raise :class:`OptionError` naming the key.
"""

from __future__ import annotations

from typing import Any

from ..errors import OptionError

MODEL_TYPES = ("logistic_reg", "boosted_tree_classifier", "dnn_classifier")
SPLIT_METHODS = ("RANDOM", "NO_SPLIT")


def _require_number(key: str, value: Any) -> float:
    if not isinstance(value, float):
        raise OptionError(key, f"expected a number, got {value!r}")
    return value


def _require_int(key: str, value: Any) -> int:
    v = _require_number(key, value)
    if not v.is_integer():
        raise OptionError(key, f"expected an integer, got {v!r}")
    return int(v)


def _require_string(key: str, value: Any) -> str:
    if not isinstance(value, str):
        raise OptionError(key, f"expected a string, got {value!r}")
    return value


def _model_type(key, value):
    v = _require_string(key, value)
    if v not in MODEL_TYPES:
        raise OptionError(key, f"must be one of {MODEL_TYPES}, got {v!r}")
    return v


def _label_cols(key, value):
    if not isinstance(value, tuple) or len(value) != 1 or not isinstance(value[0], str):
        raise OptionError(key, "must be a list of exactly one column name")
    return value


def _split_method(key, value):
    v = _require_string(key, value)
    if v not in SPLIT_METHODS:
        raise OptionError(key, f"must be one of {SPLIT_METHODS}, got {v!r}")
    return v


def _eval_fraction(key, value):
    v = _require_number(key, value)
    if not 0.0 < v < 1.0:
        raise OptionError(key, f"must be in (0, 1), got {v!r}")
    return v


def _positive_int(key, value):
    v = _require_int(key, value)
    if v <= 0:
        raise OptionError(key, f"must be a positive integer, got {v}")
    return v


def _positive_real(key, value):
    v = _require_number(key, value)
    if v <= 0.0:
        raise OptionError(key, f"must be positive, got {v!r}")
    return v


def _nonneg_real(key, value):
    v = _require_number(key, value)
    if v < 0.0:
        raise OptionError(key, f"must be nonnegative, got {v!r}")
    return v


def _nonneg_int(key, value):
    v = _require_int(key, value)
    if v < 0:
        raise OptionError(key, f"must be a nonnegative integer, got {v}")
    return v


def _hidden_units(key, value):
    if not isinstance(value, tuple):
        raise OptionError(key, "must be a list of positive integers")
    units = []
    for item in value:
        if not isinstance(item, float) or not item.is_integer() or item <= 0:
            raise OptionError(key, f"must be a list of positive integers, got {item!r}")
        units.append(int(item))
    return tuple(units)


_VALIDATORS = {
    "model_type": _model_type,
    "input_label_cols": _label_cols,
    "data_split_method": _split_method,
    "data_split_eval_fraction": _eval_fraction,
    "max_iterations": _positive_int,
    "learn_rate": _positive_real,
    "min_rel_progress": _positive_real,
    "l1_reg": _nonneg_real,
    "l2_reg": _nonneg_real,
    "max_tree_depth": _positive_int,
    "hidden_units": _hidden_units,
    "batch_size": _positive_int,
    "seed": _nonneg_int,
}

RECOGNIZED_KEYS = tuple(_VALIDATORS)


def validate_option(key: str, value: Any) -> Any:
    """Coerce one raw option value to canonical form or raise OptionError."""
    validator = _VALIDATORS.get(key.lower())
    if validator is None:
        raise OptionError(key, "unknown option key")
    return validator(key.lower(), value)


def validate_options(raw: dict) -> dict:
    out = {}
    for key, value in raw.items():
        out[key.lower()] = validate_option(key, value)
    if "model_type" not in out:
        raise OptionError("model_type", "is required")
    if "input_label_cols" not in out:
        raise OptionError("input_label_cols", "is required")
    return out
