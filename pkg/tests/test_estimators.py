import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler

from hyperhom.core import Hypergraph
from hyperhom.errors import UserError
from hyperhom.estimators import BettiTransformer, ConnectivityTransformer

X = [
    "v0\nv1\nv2\nv0 v1\nv0 v1 v2\n",     # two components in degree 0
    [["a", "b"], ["b", "c"], ["a", "c"]],  # hollow triangle, no vertices
    Hypergraph.from_edges([["a"], ["b"], ["a", "b"]]),
]


def test_betti_matrix():
    t = BettiTransformer().fit(X)
    assert t.n_features_out_ == 3
    out = t.transform(X)
    assert out.dtype == np.int64
    assert out.tolist() == [[2, 0, 0], [0, 1, 0], [1, 0, 0]]
    assert list(t.get_feature_names_out()) == ["betti_0", "betti_1", "betti_2"]


def test_betti_fixed_degree_truncates_and_pads():
    assert BettiTransformer(max_degree=0).fit_transform(X).tolist() == [[2], [0], [1]]
    assert BettiTransformer(max_degree=3).fit_transform(X).shape == (3, 4)


def test_betti_mod_p():
    rp = BettiTransformer(coeff="zp", p=2).fit_transform([X[1]])
    assert rp.tolist() == [[0, 1]]


def test_params_and_clone():
    t = BettiTransformer(max_degree=2, coeff="zp", p=3)
    assert t.get_params() == {"max_degree": 2, "coeff": "zp", "p": 3}
    c = clone(t)
    assert c.get_params() == t.get_params() and not hasattr(c, "n_features_out_")


def test_pipeline():
    pipe = make_pipeline(BettiTransformer(), StandardScaler())
    assert pipe.fit_transform(X).shape == (3, 3)
    conn = ConnectivityTransformer().fit_transform([[["a", "b"]], [["a"], ["b"]]])
    assert conn.tolist() == [[0.625], [1.0]]


def test_validation():
    with pytest.raises(NotFittedError):
        BettiTransformer().transform(X)
    with pytest.raises(UserError):
        BettiTransformer(coeff="z").fit(X)
    with pytest.raises(UserError):
        BettiTransformer().fit("a b")
    with pytest.raises(UserError):
        BettiTransformer().fit([])
    with pytest.raises(UserError):
        BettiTransformer().fit([42])
