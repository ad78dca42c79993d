"""Shared-nearest-neighbor clustering (Jarvis-Patrick).

Each point gets its k nearest neighbors (self excluded, distance ties broken
toward the lower index).  Two points join iff each is in the other's
neighbor list and the lists share at least ``k_t`` members; clusters are the
connected components of the join graph, numbered in discovery (index) order.
Every point is assigned: a point joining nothing is a singleton cluster.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from ..metricspace import DistanceMatrix
from .types import JARVIS_PATRICK, ClusterLabeling, JarvisPatrickParams


def knn_lists(d: np.ndarray, k: int) -> np.ndarray:
    """(n, k) array of neighbor indices, nearest first, ties by lower index."""
    n = d.shape[0]
    out = np.empty((n, k), dtype=np.int64)
    for i in range(n):
        order = np.argsort(d[i], kind="stable")  # stable: equal distances keep index order
        out[i] = order[order != i][:k]
    return out


def jarvis_patrick(dm: DistanceMatrix, k: int, k_t: int) -> ClusterLabeling:
    params = JarvisPatrickParams(k=k, k_t=k_t)
    n = dm.n
    if k >= n:
        raise ValueError(f"need k <= n-1, got k={k}, n={n}")

    neighbors = knn_lists(dm.d, k)
    member = np.zeros((n, n), dtype=bool)
    member[np.arange(n)[:, None], neighbors] = True

    mutual = member & member.T
    shared = member.astype(np.float64) @ member.T.astype(np.float64)
    join = mutual & (shared >= k_t)
    np.fill_diagonal(join, False)

    labels = np.full(n, -1, dtype=np.int64)
    cluster = 0
    for seed in range(n):
        if labels[seed] != -1:
            continue
        labels[seed] = cluster
        queue = deque([seed])
        while queue:
            p = queue.popleft()
            for q in np.flatnonzero(join[p]):
                if labels[q] == -1:
                    labels[q] = cluster
                    queue.append(int(q))
        cluster += 1

    return ClusterLabeling(labels=labels, k=cluster, method=JARVIS_PATRICK, params=params)
