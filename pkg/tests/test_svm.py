import numpy as np
import pytest
from scipy import sparse

from sciqa.errors import ValidationError
from sciqa.svm import decision_scores, hinge_objective, train_one_vs_rest


def separable_dense(n_per_class=25, dim=6, seed=0):
    rng = np.random.default_rng(seed)
    X = np.vstack(
        [rng.normal(loc=2.0, scale=0.5, size=(n_per_class, dim)),
         rng.normal(loc=-2.0, scale=0.5, size=(n_per_class, dim))]
    )
    y = np.array([0] * n_per_class + [1] * n_per_class)
    return X, y


class TestTraining:
    def test_separable_dense(self):
        X, y = separable_dense()
        W, b = train_one_vs_rest(X, y, 2, c_value=1.0, seed=0)
        pred = np.argmax(decision_scores(X, W, b), axis=1)
        assert (pred == y).mean() == 1.0

    def test_separable_sparse(self):
        X, y = separable_dense()
        Xs = sparse.csr_matrix(X)
        W, b = train_one_vs_rest(Xs, y, 2, c_value=1.0, seed=0)
        pred = np.argmax(decision_scores(Xs, W, b), axis=1)
        assert (pred == y).mean() == 1.0

    def test_same_seed_identical_weights(self):
        X, y = separable_dense()
        W1, b1 = train_one_vs_rest(X, y, 2, c_value=1.0, seed=42)
        W2, b2 = train_one_vs_rest(X, y, 2, c_value=1.0, seed=42)
        assert np.array_equal(W1, W2)
        assert np.array_equal(b1, b2)

    def test_different_seed_differs(self):
        X, y = separable_dense()
        W1, _ = train_one_vs_rest(X, y, 2, c_value=1.0, seed=1)
        W2, _ = train_one_vs_rest(X, y, 2, c_value=1.0, seed=2)
        assert not np.array_equal(W1, W2)

    def test_needs_two_classes(self):
        X, y = separable_dense()
        with pytest.raises(ValidationError, match="2 classes"):
            train_one_vs_rest(X, y, 1, c_value=1.0)

    def test_empty_dataset(self):
        with pytest.raises(ValidationError):
            train_one_vs_rest(np.zeros((0, 3)), np.array([], dtype=int), 2, 1.0)

    def test_invalid_c(self):
        X, y = separable_dense()
        with pytest.raises(ValidationError):
            train_one_vs_rest(X, y, 2, c_value=0.0)


class TestObjective:
    def test_objective_not_worse_than_zero_weights(self):
        """Per class, the trained regularized hinge objective is at most the
        value at zero weights (which is exactly 1.0)."""
        X, y = separable_dense(n_per_class=30, dim=8, seed=3)
        n = X.shape[0]
        for c_value in (0.1, 1.0, 10.0):
            lam = 1.0 / (c_value * n)
            W, b = train_one_vs_rest(X, y, 2, c_value=c_value, seed=0)
            for cls in range(2):
                y_signed = np.where(y == cls, 1.0, -1.0)
                trained = hinge_objective(X, y_signed, W[cls], b[cls], lam)
                at_zero = hinge_objective(X, y_signed, np.zeros(X.shape[1]), 0.0, lam)
                assert at_zero == 1.0
                assert trained <= at_zero

    def test_sparse_objective_matches_dense(self):
        X, y = separable_dense(n_per_class=10, dim=4, seed=5)
        y_signed = np.where(y == 0, 1.0, -1.0)
        w = np.full(4, 0.25)
        dense_val = hinge_objective(X, y_signed, w, 0.1, 0.01)
        sparse_val = hinge_objective(sparse.csr_matrix(X), y_signed, w, 0.1, 0.01)
        assert abs(dense_val - sparse_val) < 1e-12
