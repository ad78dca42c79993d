"""Naive reference implementations used as independent test oracles.

Everything here is written with plain Python loops straight from the
definitions (O(n^3) closures, explicit sums) and stays independent of the
library code paths it checks.
"""

from __future__ import annotations

import math


def naive_dbscan(d, eps: float, min_pts: int) -> list[int]:
    """Density clustering by definition: core points via neighborhood counts
    (self included), clusters as the transitive closure of core adjacency,
    border points attached to the earliest-created reachable cluster."""
    n = len(d)
    core = [sum(1 for j in range(n) if d[i][j] <= eps) >= min_pts for i in range(n)]

    adj = [[core[i] and core[j] and d[i][j] <= eps for j in range(n)] for i in range(n)]
    for i in range(n):
        adj[i][i] = core[i]
    for k in range(n):
        for i in range(n):
            if adj[i][k]:
                for j in range(n):
                    if adj[k][j]:
                        adj[i][j] = True

    labels = [-1] * n
    n_clusters = 0
    for i in range(n):
        if core[i] and labels[i] == -1:
            for j in range(n):
                if adj[i][j]:
                    labels[j] = n_clusters
            n_clusters += 1
    for i in range(n):
        if not core[i]:
            reached = [labels[j] for j in range(n) if core[j] and d[i][j] <= eps]
            labels[i] = min(reached) if reached else -1
    return labels


def naive_knn(d, i: int, k: int) -> list[int]:
    order = sorted((d[i][j], j) for j in range(len(d)) if j != i)
    return [j for _, j in order[:k]]


def naive_jarvis_patrick(d, k: int, k_t: int) -> list[int]:
    """Shared-nearest-neighbor clustering by set construction and an O(n^3)
    connectivity closure."""
    n = len(d)
    knn = [set(naive_knn(d, i, k)) for i in range(n)]
    joined = [
        [
            i != j and i in knn[j] and j in knn[i] and len(knn[i] & knn[j]) >= k_t
            for j in range(n)
        ]
        for i in range(n)
    ]
    for i in range(n):
        joined[i][i] = True
    for m in range(n):
        for i in range(n):
            if joined[i][m]:
                for j in range(n):
                    if joined[m][j]:
                        joined[i][j] = True

    labels = [-1] * n
    n_clusters = 0
    for i in range(n):
        if labels[i] == -1:
            for j in range(n):
                if joined[i][j]:
                    labels[j] = n_clusters
            n_clusters += 1
    return labels


def naive_silhouette(d, labels) -> tuple[list[float | None], float]:
    """Per-point silhouette and mean, noise (-1) excluded everywhere.

    Returns (scores, mean); scores holds None at noise positions.
    """
    n = len(d)
    included = [i for i in range(n) if labels[i] != -1]
    if not included:
        raise ValueError("nothing to evaluate")
    clusters = sorted({labels[i] for i in included})
    scores: list[float | None] = [None] * n
    if len(clusters) < 2:
        for i in included:
            scores[i] = 0.0
        return scores, 0.0
    members = {c: [i for i in included if labels[i] == c] for c in clusters}
    for i in included:
        own = members[labels[i]]
        if len(own) == 1:
            scores[i] = 0.0
            continue
        a = sum(d[i][j] for j in own if j != i) / (len(own) - 1)
        b = min(
            sum(d[i][j] for j in members[c]) / len(members[c])
            for c in clusters
            if c != labels[i]
        )
        scores[i] = 0.0 if max(a, b) == 0.0 else (b - a) / max(a, b)
    mean = sum(scores[i] for i in included) / len(included)
    return scores, mean


def brute_reachability(d, min_pts: int) -> tuple[list[int], list[float], list[float]]:
    """Reachability ordering by definition, with unbounded radius.

    Returns (ordering, reachability per point, core distance per point).
    """
    n = len(d)
    core = []
    for i in range(n):
        ds = sorted(d[i][j] for j in range(n))  # includes d[i][i] = 0
        core.append(ds[min_pts - 1] if min_pts <= n else math.inf)
    reach = [math.inf] * n
    processed = [False] * n
    ordering = []
    for _ in range(n):
        best = None
        for i in range(n):
            if not processed[i] and (best is None or reach[i] < reach[best]):
                best = i
        processed[best] = True
        ordering.append(best)
        if math.isfinite(core[best]):
            for j in range(n):
                if not processed[j]:
                    r = max(core[best], d[best][j])
                    if r < reach[j]:
                        reach[j] = r
    return ordering, reach, core


def partitions_equal(labels_a, labels_b) -> bool:
    """Same noise set and same grouping of non-noise points, ignoring the
    numbering of clusters."""
    if len(labels_a) != len(labels_b):
        return False
    noise_a = {i for i, v in enumerate(labels_a) if v == -1}
    noise_b = {i for i, v in enumerate(labels_b) if v == -1}
    if noise_a != noise_b:
        return False

    def groups(labels):
        by = {}
        for i, v in enumerate(labels):
            if v != -1:
                by.setdefault(v, set()).add(i)
        return {frozenset(g) for g in by.values()}

    return groups(labels_a) == groups(labels_b)
