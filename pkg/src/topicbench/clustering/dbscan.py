"""Density-based clustering over a precomputed distance matrix.

A point is a core point iff its eps-neighborhood (itself included) holds at
least ``min_pts`` points.  Clusters are the maximal density-connected sets of
core points plus the border points they reach; everything else is noise.
Seeds are scanned in index order and expansion queues are processed in index
order, so border points attach to the first cluster that reaches them and the
result is fully deterministic.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from ..metricspace import DistanceMatrix
from .types import DBSCAN, NOISE, ClusterLabeling, DbscanParams


def dbscan(dm: DistanceMatrix, eps: float, min_pts: int) -> ClusterLabeling:
    params = DbscanParams(eps=eps, min_pts=min_pts)
    d = dm.d
    n = dm.n
    within = d <= eps
    neighbor_counts = within.sum(axis=1)
    is_core = neighbor_counts >= min_pts

    labels = np.full(n, NOISE, dtype=np.int64)
    cluster = 0
    for seed in range(n):
        if labels[seed] != NOISE or not is_core[seed]:
            continue
        labels[seed] = cluster
        queue = deque([seed])
        while queue:
            p = queue.popleft()
            if not is_core[p]:
                continue  # border points join but never expand
            for q in np.flatnonzero(within[p]):
                if labels[q] == NOISE:
                    labels[q] = cluster
                    queue.append(int(q))
        cluster += 1

    return ClusterLabeling(labels=labels, k=cluster, method=DBSCAN, params=params)
