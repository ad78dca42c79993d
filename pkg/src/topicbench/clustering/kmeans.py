"""Lloyd k-means over tweet vectors, with a spherical variant for cosine.

Under the Euclidean metric this is standard k-means (centroid = mean,
objective = within-cluster sum of squared distances).  Under cosine the
spherical variant is used: inputs are unit-normalized, a centroid is the
renormalized mean of its members, and the objective is the within-cluster
sum of (1 - cosine similarity).  Both updates are the exact minimizers of
their objective, so the objective never increases across iterations.

Determinism: k-means++ seeding from a seeded generator; equal-distance
assignments resolve to the lower cluster index; an emptied cluster is
reseeded with the point currently farthest from its own centroid.
"""

from __future__ import annotations

import numpy as np

from ..metricspace import Metric
from .types import KMEANS, ClusterLabeling, KMeansParams

MAX_ITER = 300


def _dissimilarities(points: np.ndarray, centers: np.ndarray, metric: Metric) -> np.ndarray:
    """(n, k) matrix of point-to-center dissimilarities."""
    if metric is Metric.EUCLIDEAN:
        # squared distances; clip tiny negatives from the expansion
        sq = (
            np.sum(points * points, axis=1)[:, None]
            - 2.0 * points @ centers.T
            + np.sum(centers * centers, axis=1)[None, :]
        )
        return np.maximum(sq, 0.0)
    return 1.0 - points @ centers.T


def _plus_plus_init(
    points: np.ndarray, k: int, metric: Metric, rng: np.random.Generator
) -> np.ndarray:
    n = points.shape[0]
    centers = np.empty((k, points.shape[1]), dtype=np.float64)
    first = int(rng.integers(n))
    centers[0] = points[first]
    best = _dissimilarities(points, centers[:1], metric)[:, 0]
    for c in range(1, k):
        weights = best * best
        total = weights.sum()
        if total > 0.0:
            idx = int(rng.choice(n, p=weights / total))
        else:
            # all remaining points coincide with chosen centers
            idx = int(np.argmax(best))
        centers[c] = points[idx]
        best = np.minimum(best, _dissimilarities(points, centers[c : c + 1], metric)[:, 0])
    return centers


def _update_centers(
    points: np.ndarray, labels: np.ndarray, k: int, metric: Metric
) -> np.ndarray:
    centers = np.empty((k, points.shape[1]), dtype=np.float64)
    for c in range(k):
        members = points[labels == c]
        mean = members.mean(axis=0)
        if metric is Metric.COSINE:
            norm = np.linalg.norm(mean)
            if norm > 0.0:
                mean = mean / norm
            else:
                # members cancel exactly; keep the first member's direction
                mean = members[0]
        centers[c] = mean
    return centers


def kmeans(
    rows: np.ndarray, metric: Metric, k: int, seed: int | None = 0
) -> ClusterLabeling:
    """Cluster ``rows`` into exactly k non-empty clusters.

    Converges when assignments stop changing or after MAX_ITER iterations.
    The per-iteration objective is recorded in ``objective_history``.
    """
    points = np.asarray(rows, dtype=np.float64)
    n = points.shape[0]
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    if metric is Metric.COSINE:
        norms = np.linalg.norm(points, axis=1)
        if np.any(norms == 0.0):
            raise ValueError("cosine k-means is undefined for zero-norm points")
        points = points / norms[:, None]

    rng = np.random.default_rng(seed)
    centers = _plus_plus_init(points, k, metric, rng)
    labels = np.full(n, -1, dtype=np.int64)
    history: list[float] = []

    for _ in range(MAX_ITER):
        diss = _dissimilarities(points, centers, metric)
        new_labels = np.argmin(diss, axis=1)  # argmin takes the lower index on ties

        # reseed any emptied cluster with the point farthest from its centroid;
        # donors come from clusters with >= 2 members (one always exists while
        # a cluster is empty), so each pass strictly fills a cluster
        counts = np.bincount(new_labels, minlength=k)
        while np.any(counts == 0):
            empty = int(np.argmin(counts))
            assigned = diss[np.arange(n), new_labels]
            assigned = np.where(counts[new_labels] >= 2, assigned, -1.0)
            donor = int(np.argmax(assigned))
            centers[empty] = points[donor]
            diss[:, empty] = _dissimilarities(points, centers[empty : empty + 1], metric)[:, 0]
            new_labels[donor] = empty
            counts = np.bincount(new_labels, minlength=k)

        converged = np.array_equal(new_labels, labels)
        labels = new_labels
        centers = _update_centers(points, labels, k, metric)
        history.append(
            float(_dissimilarities(points, centers, metric)[np.arange(n), labels].sum())
        )
        if converged:
            break

    return ClusterLabeling(
        labels=labels,
        k=k,
        method=KMEANS,
        params=KMeansParams(k=k),
        seed=seed,
        objective_history=history,
    )
