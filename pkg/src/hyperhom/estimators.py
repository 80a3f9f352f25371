"""scikit-learn transformers turning collections of hypergraphs into feature matrices.

``X`` is a sequence whose items are :class:`Hypergraph` objects, ``.hg``
strings or iterables of hyperedges.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .chainalg import ring_from_flag
from .core import Hypergraph, parse_hypergraph
from .embedded import betti_numbers
from .errors import UserError
from .indices import connectivity_index


def as_hypergraph(item) -> Hypergraph:
    if isinstance(item, Hypergraph):
        return item
    if isinstance(item, str):
        return parse_hypergraph(item)
    try:
        return Hypergraph.from_edges(item)
    except TypeError as exc:
        raise UserError(f"cannot read a hypergraph from {type(item).__name__}") from exc


def check_hypergraphs(X) -> list:
    if isinstance(X, (str, Hypergraph)):
        raise UserError("X must be a sequence of hypergraphs")
    out = [as_hypergraph(x) for x in X]
    if not out:
        raise UserError("X is empty")
    return out


class BettiTransformer(TransformerMixin, BaseEstimator):
    """Embedded Betti numbers in degrees ``0..max_degree``.

    With ``max_degree=None`` the largest dimension seen during ``fit`` is used.
    """

    def __init__(self, max_degree=None, coeff="q", p=None):
        self.max_degree = max_degree
        self.coeff = coeff
        self.p = p

    def fit(self, X, y=None):
        hs = check_hypergraphs(X)
        top = max(h.dim for h in hs) if self.max_degree is None else self.max_degree
        self.ring_ = ring_from_flag(self.coeff, self.p)
        if not self.ring_.is_field:
            raise UserError("Betti numbers need field coefficients (q or zp)")
        self.n_features_out_ = max(top, 0) + 1
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_out_")
        hs = check_hypergraphs(X)
        out = np.zeros((len(hs), self.n_features_out_), dtype=np.int64)
        for row, h in enumerate(hs):
            b = betti_numbers(h, self.ring_) if h else []
            k = min(len(b), self.n_features_out_)
            out[row, :k] = b[:k]
        return out

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "n_features_out_")
        return np.array([f"betti_{i}" for i in range(self.n_features_out_)], dtype=object)


class ConnectivityTransformer(TransformerMixin, BaseEstimator):
    """One column holding the connectivity index (a float; exact values via the index API)."""

    def fit(self, X, y=None):
        check_hypergraphs(X)
        self.n_features_out_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_out_")
        hs = check_hypergraphs(X)
        return np.array([[float(connectivity_index(h).value)] for h in hs])

    def get_feature_names_out(self, input_features=None):
        return np.array(["conn"], dtype=object)
