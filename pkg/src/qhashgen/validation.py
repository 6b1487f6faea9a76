"""Input checks shared by the estimators and the command line."""

from __future__ import annotations

import numpy as np
from sklearn.utils import check_array

from .gf import check_modulus


def check_words(X, k: int | None = None, alphabet: int | None = None, exclude_zero: bool = False) -> np.ndarray:
    """Validate a batch of words as an int64 array of shape (n_samples, k)."""
    X = check_array(X, dtype=None, ensure_2d=False, ensure_all_finite=True)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-d array of words, got {X.ndim} dimensions")
    if X.dtype.kind == "f":
        if not np.all(X == np.round(X)):
            raise ValueError("word entries must be integers")
    elif X.dtype.kind not in "iub":
        raise ValueError(f"word entries must be integers, got dtype {X.dtype}")
    X = X.astype(np.int64)
    if k is not None and X.shape[1] != k:
        raise ValueError(f"X has {X.shape[1]} features, but words have length k={k}")
    if alphabet is not None and X.size and (X.min() < 0 or X.max() >= alphabet):
        raise ValueError(f"word entries must lie in [0, {alphabet})")
    if exclude_zero and np.any(~X.any(axis=1)):
        raise ValueError("the all-zero word is outside this family's domain")
    return X


def check_prime(q, name: str = "q") -> int:
    try:
        return check_modulus(q)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{name}: {exc}") from None


def check_open_unit(value: float, name: str = "delta") -> float:
    value = float(value)
    if not 0 < value < 1:
        raise ValueError(f"{name}={value} must lie in (0, 1)")
    return value


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    if isinstance(value, bool) or int(value) != value:
        raise ValueError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value
