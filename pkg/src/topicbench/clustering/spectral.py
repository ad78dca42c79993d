"""Spectral clustering on a similarity matrix (normalized-affinity recipe).

The affinity is the pairwise similarity with the diagonal zeroed and negative
entries clamped to 0 (cosine similarity can dip below zero and graph weights
must be nonnegative).  The rows of the matrix of the k leading eigenvectors
of D^{-1/2} A D^{-1/2} are unit-normalized and clustered with Euclidean
k-means.

Determinism: eigenvectors are ordered by descending eigenvalue and sign-fixed
so their first nonzero component is positive; k-means runs with the caller's
seed.  A point with zero affinity to everything has no place in the embedding
and is rejected.
"""

from __future__ import annotations

import numpy as np

from ..errors import DisconnectedPointError
from ..metricspace import Metric, SimilarityMatrix
from .kmeans import kmeans
from .types import SPECTRAL, ClusterLabeling, SpectralParams

_SIGN_EPS = 1e-12


def affinity_from_similarity(sm: SimilarityMatrix) -> np.ndarray:
    a = np.array(sm.s, dtype=np.float64)
    np.fill_diagonal(a, 0.0)
    np.clip(a, 0.0, None, out=a)
    return a


def top_eigenpairs(sym: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """The k largest eigenpairs of a symmetric matrix, eigenvalues descending,
    each eigenvector's first nonzero component made positive."""
    vals, vecs = np.linalg.eigh(sym)
    order = np.argsort(vals)[::-1][:k]
    vals = vals[order]
    vecs = vecs[:, order]
    for j in range(vecs.shape[1]):
        col = vecs[:, j]
        nonzero = np.flatnonzero(np.abs(col) > _SIGN_EPS)
        if nonzero.size and col[nonzero[0]] < 0:
            vecs[:, j] = -col
    return vals, vecs


def spectral(sm: SimilarityMatrix, k: int, seed: int | None = 0) -> ClusterLabeling:
    params = SpectralParams(k=k)
    n = sm.n
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")

    a = affinity_from_similarity(sm)
    degrees = a.sum(axis=1)
    isolated = np.flatnonzero(degrees == 0.0)
    if isolated.size:
        raise DisconnectedPointError(
            f"point(s) {isolated.tolist()} have zero affinity to every other point"
        )

    inv_sqrt = 1.0 / np.sqrt(degrees)
    m = a * inv_sqrt[:, None] * inv_sqrt[None, :]
    m = (m + m.T) / 2.0  # keep eigh input exactly symmetric
    _, vecs = top_eigenpairs(m, k)

    row_norms = np.linalg.norm(vecs, axis=1)
    # zero rows cannot occur for connected graphs with k >= 1 eigenvectors,
    # but guard the division anyway
    row_norms[row_norms == 0.0] = 1.0
    embedding = vecs / row_norms[:, None]

    inner = kmeans(embedding, Metric.EUCLIDEAN, k=k, seed=seed)
    return ClusterLabeling(
        labels=inner.labels, k=k, method=SPECTRAL, params=params, seed=seed
    )
