"""Input checks shared by the estimator and the command line."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

__all__ = ["check_rational_matrix", "check_points"]


def _to_fraction(x) -> Fraction:
    if isinstance(x, (bool, np.bool_)):
        raise ValueError(f"boolean entry {x!r} is not a coordinate")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, (float, np.floating)):
        if not math.isfinite(float(x)):
            raise ValueError("coordinates must be finite")
        return Fraction(float(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {x!r}") from exc
    raise ValueError(f"unsupported coordinate {x!r}")


def check_rational_matrix(X, *, min_rows: int = 1, n_features: int | None = None):
    """Exact ``list[list[Fraction]]`` from a numpy array, nested lists or strings.

    Floats are converted exactly (binary value), so pass integers or strings
    such as ``"1/3"`` when the intended value is not dyadic.
    """
    if isinstance(X, np.ndarray):
        if X.ndim != 2:
            raise ValueError(f"expected a 2-d array, got {X.ndim} dimensions")
        rows = X.tolist()
    else:
        try:
            rows = [list(r) for r in X]
        except TypeError as exc:
            raise ValueError("expected a matrix of coordinates") from exc
    if len(rows) < min_rows:
        raise ValueError(f"need at least {min_rows} row(s)")
    if rows:
        width = len(rows[0])
        if width == 0:
            raise ValueError("rows must be nonempty")
        if any(len(r) != width for r in rows):
            raise ValueError("ragged input: rows have different lengths")
        if n_features is not None and width != n_features:
            raise ValueError(f"expected {n_features} coordinates per row, got {width}")
    return [[_to_fraction(x) for x in r] for r in rows]


def check_points(X, n_features: int):
    """Points to classify; each row must have ``n_features`` coordinates."""
    return check_rational_matrix(X, n_features=n_features)
