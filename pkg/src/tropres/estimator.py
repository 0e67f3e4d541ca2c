"""A scikit-learn style front end to the type decomposition."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_points, check_rational_matrix
from .complex import DEFAULT_NODE_LIMIT, bounded_subcomplex, enumerate_cells, is_fine
from .tropical import Arrangement, coarse_type, fine_type

__all__ = ["TypeDecomposition"]


class TypeDecomposition(TransformerMixin, BaseEstimator):
    """Decompose the torus by the arrangement whose apices are the rows of ``X``.

    ``transform`` maps query points to their types: coarse types (one column
    per coordinate) or flattened fine types (``n * d`` columns).  ``predict``
    returns the index of the cell containing each point in ``complex_.cells``.

    Parameters
    ----------
    labels : {"coarse", "fine"}
        Which type ``transform`` returns.
    node_limit : int
        Search budget for cell enumeration.
    """

    def __init__(self, labels="coarse", node_limit=DEFAULT_NODE_LIMIT):
        self.labels = labels
        self.node_limit = node_limit

    def fit(self, X, y=None):
        if self.labels not in ("coarse", "fine"):
            raise ValueError(f"labels must be 'coarse' or 'fine', not {self.labels!r}")
        rows = check_rational_matrix(X)
        self.arrangement_ = Arrangement.from_points(rows)
        self.complex_ = enumerate_cells(self.arrangement_, node_limit=self.node_limit)
        self.bounded_complex_ = bounded_subcomplex(self.complex_)
        self.f_vector_ = np.array(self.complex_.f_vector(), dtype=int)
        self.generic_ = is_fine(self.complex_)
        self.n_features_in_ = self.arrangement_.d
        return self

    def transform(self, X):
        check_is_fitted(self)
        pts = check_points(X, self.n_features_in_)
        arr = self.arrangement_
        if self.labels == "coarse":
            out = [coarse_type(arr, p) for p in pts]
        else:
            out = [[x for row in fine_type(arr, p) for x in row] for p in pts]
        width = arr.d if self.labels == "coarse" else arr.n * arr.d
        return np.array(out, dtype=int).reshape(len(pts), width)

    def predict(self, X):
        check_is_fitted(self)
        pts = check_points(X, self.n_features_in_)
        return np.array([self.complex_.locate(p) for p in pts], dtype=int)
