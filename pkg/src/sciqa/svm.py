"""One-vs-rest linear SVM trained by deterministic subgradient descent.

Per class the objective is ``lam/2 * ||w||^2 + mean_i hinge(y_i * (w.x_i + b))``
with ``lam = 1 / (C * n)``. Training runs a fixed number of epochs of
per-sample subgradient steps with step size ``1 / (lam * t)`` (t counts
updates) and a seeded shuffle each epoch. The bias is carried as an
augmented constant-1 feature sharing the weight shrinkage: a free bias
under the ``1/(lam*t)`` schedule takes unbounded early steps (the first is
``C*n``) and never settles. All classes share the same sample order, which
is equivalent to training each class independently with that order, so the
per-class weights are deterministic given the seed.

Internally the weights are kept as ``W = U / t``: the multiplicative
``(1 - 1/t)`` shrinkage telescopes to exactly ``1/t``, turning each
violated-margin update into ``U += y * x / lam`` and avoiding a full-matrix
rescale per sample.
"""

from __future__ import annotations

import numpy as np
from scipy import sparse

from .errors import ValidationError

DEFAULT_EPOCHS = 50
DEFAULT_C_GRID = (0.1, 1.0, 10.0)


def train_one_vs_rest(
    X,
    labels: np.ndarray,
    n_classes: int,
    c_value: float,
    epochs: int = DEFAULT_EPOCHS,
    seed: int = 0,
) -> tuple[np.ndarray, np.ndarray]:
    """Train per-class weights and biases; returns (W: (K,V), b: (K,)).

    ``X`` may be a scipy CSR matrix or a dense (n, V) array; ``labels`` are
    class indices in [0, n_classes).
    """
    n = X.shape[0]
    if n == 0:
        raise ValidationError("cannot train on an empty dataset")
    if n_classes < 2:
        raise ValidationError("need >= 2 classes")
    if c_value <= 0:
        raise ValidationError("C must be > 0")
    labels = np.asarray(labels, dtype=np.int64)
    dim = X.shape[1]
    lam = 1.0 / (c_value * n)
    # Signed targets per class: +1 for the class's own samples, -1 otherwise.
    Y = np.where(labels[:, None] == np.arange(n_classes)[None, :], 1.0, -1.0)

    U = np.zeros((n_classes, dim), dtype=np.float64)
    Ub = np.zeros(n_classes, dtype=np.float64)  # bias as an augmented constant-1 feature
    rng = np.random.default_rng(seed)
    t = 0

    is_sparse = sparse.issparse(X)
    if is_sparse:
        X = X.tocsr()
        indptr, indices, data = X.indptr, X.indices, X.data
    else:
        X = np.asarray(X, dtype=np.float64)

    for _ in range(epochs):
        order = rng.permutation(n)
        for i in order:
            if is_sparse:
                sl = slice(indptr[i], indptr[i + 1])
                idx = indices[sl]
                vals = data[sl]
                scores = (U[:, idx] @ vals + Ub) / t if t > 0 else np.zeros(n_classes)
            else:
                row = X[i]
                scores = (U @ row + Ub) / t if t > 0 else np.zeros(n_classes)
            t += 1
            violated = Y[i] * scores < 1.0
            if violated.any():
                yv = Y[i][violated]
                if is_sparse:
                    if idx.size:
                        U[np.ix_(violated, idx)] += np.outer(yv, vals) / lam
                else:
                    U[violated] += np.outer(yv, row) / lam
                Ub[violated] += yv / lam

    return U / t, Ub / t


def decision_scores(X, W: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Per-class decision values, shape (n, K)."""
    if sparse.issparse(X):
        return np.asarray(X @ W.T) + b
    return np.asarray(X, dtype=np.float64) @ W.T + b


def hinge_objective(X, y_signed: np.ndarray, w: np.ndarray, bias: float, lam: float) -> float:
    """Regularized hinge objective of one binary classifier."""
    if sparse.issparse(X):
        margins = y_signed * (np.asarray(X @ w).ravel() + bias)
    else:
        margins = y_signed * (np.asarray(X, dtype=np.float64) @ w + bias)
    hinge = np.maximum(0.0, 1.0 - margins)
    return 0.5 * lam * float(w @ w) + float(hinge.mean())
