"""Silhouette scoring over a labeling and the distance matrix the clusterer
consumed, so the metric identity flows through to the evaluation.

For point i in cluster C: a(i) is the mean distance to the other members of
C, b(i) the smallest mean distance to any other cluster, and

    s(i) = 0                       if |C| = 1
    s(i) = (b(i) - a(i)) / max(a(i), b(i))   otherwise

Noise handling is a policy: EXCLUDE drops noise points from the score and
from every a/b computation (the default); AS_SINGLETONS turns each noise
point into its own one-point cluster instead.  A labeling with fewer than
two clusters has no between-cluster structure and scores 0 by convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .clustering.types import NOISE, ClusterLabeling
from .errors import EmptyEvaluationError
from .metricspace import DistanceMatrix, Metric


class NoisePolicy(str, Enum):
    EXCLUDE = "exclude"
    AS_SINGLETONS = "as-singletons"


@dataclass(frozen=True)
class SilhouetteReport:
    per_point: np.ndarray  # s(i) per original point; NaN for excluded noise
    mean: float
    metric: Metric
    noise_policy: NoisePolicy


def _effective_labels(
    labels: np.ndarray, k: int, policy: NoisePolicy
) -> tuple[np.ndarray, np.ndarray, int]:
    """Included-point mask and relabeled cluster ids under the policy."""
    labels = np.asarray(labels, dtype=np.int64)
    if policy is NoisePolicy.EXCLUDE:
        included = labels != NOISE
        return included, labels, k
    out = labels.copy()
    next_id = k
    for i in np.flatnonzero(labels == NOISE):
        out[i] = next_id
        next_id += 1
    return np.ones(labels.shape, dtype=bool), out, next_id


def _per_point_scores(d: np.ndarray, labels: np.ndarray, n_clusters: int) -> np.ndarray:
    """s(i) for every point of ``d``; requires >= 2 clusters and no noise."""
    n = d.shape[0]
    sizes = np.bincount(labels, minlength=n_clusters)
    # distance mass from each point to each cluster
    mass = np.zeros((n, n_clusters), dtype=np.float64)
    for c in range(n_clusters):
        mass[:, c] = d[:, labels == c].sum(axis=1)

    own = labels
    own_size = sizes[own]
    with np.errstate(invalid="ignore", divide="ignore"):
        a = mass[np.arange(n), own] / (own_size - 1)  # self-distance is 0, excluded by the -1
        mean_to = mass / sizes[None, :]
    mean_to[np.arange(n), own] = np.inf
    b = mean_to.min(axis=1)

    denom = np.maximum(a, b)
    with np.errstate(invalid="ignore", divide="ignore"):
        s = (b - a) / denom
    s = np.where(denom == 0.0, 0.0, s)  # a = b = 0: perfectly ambiguous, score 0
    s = np.where(own_size == 1, 0.0, s)  # singleton clusters score exactly 0
    return s


def silhouette_point(i: int, labeling: ClusterLabeling, dm: DistanceMatrix,
                     policy: NoisePolicy = NoisePolicy.EXCLUDE) -> float:
    """s(i) for one point; undefined (raises) for noise under EXCLUDE or for
    labelings with fewer than two clusters."""
    included, labels, k = _effective_labels(labeling.labels, labeling.k, policy)
    if k < 2:
        raise ValueError("silhouette is undefined with fewer than 2 clusters")
    if not included[i]:
        raise ValueError(f"point {i} is noise and excluded under this policy")
    idx = np.flatnonzero(included)
    sub = _per_point_scores(dm.d[np.ix_(idx, idx)], labels[idx], k)
    return float(sub[np.flatnonzero(idx == i)[0]])


def silhouette_report(labeling: ClusterLabeling, dm: DistanceMatrix,
                      policy: NoisePolicy = NoisePolicy.EXCLUDE) -> SilhouetteReport:
    if labeling.n != dm.n:
        raise ValueError(f"labeling covers {labeling.n} points, matrix {dm.n}")
    included, labels, k = _effective_labels(labeling.labels, labeling.k, policy)
    idx = np.flatnonzero(included)
    if idx.size == 0:
        raise EmptyEvaluationError("no points remain to evaluate (all noise)")
    per_point = np.full(labeling.n, np.nan)
    if k < 2:
        # a single cluster (or none) has no separation to measure
        mean = 0.0
        per_point[idx] = 0.0
    else:
        scores = _per_point_scores(dm.d[np.ix_(idx, idx)], labels[idx], k)
        per_point[idx] = scores
        mean = float(scores.mean())
    return SilhouetteReport(per_point=per_point, mean=mean, metric=dm.metric, noise_policy=policy)


def silhouette_score(labeling: ClusterLabeling, dm: DistanceMatrix,
                     policy: NoisePolicy = NoisePolicy.EXCLUDE) -> float:
    """Mean s(i) over included points (0 for degenerate labelings)."""
    return silhouette_report(labeling, dm, policy).mean
