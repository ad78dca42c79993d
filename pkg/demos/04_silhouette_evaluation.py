"""Silhouette mechanics: cohesion vs separation, noise policies, and the
degenerate-labeling convention.

Run:  python3 demos/04_silhouette_evaluation.py
"""

import numpy as np

from topicbench.clustering import ClusterLabeling, NOISE
from topicbench.evaluation import NoisePolicy, silhouette_point, silhouette_report
from topicbench.metricspace import DistanceMatrix, Metric

# Two tight pairs far apart, plus one stray point marked as noise.
coords = np.array([0.0, 0.1, 10.0, 10.1, 5.0])
d = np.abs(coords[:, None] - coords[None, :])
dm = DistanceMatrix(n=5, metric=Metric.EUCLIDEAN, d=d)

labeling = ClusterLabeling(
    labels=np.array([0, 0, 1, 1, NOISE]), k=2, method="dbscan", params=None
)

# ---------------------------------------------------------------------------
# For point 0: a = mean distance inside its own cluster = 0.1,
# b = mean distance to the nearest other cluster = 10.05,
# s = (b - a) / max(a, b).

s0 = silhouette_point(0, labeling, dm)
print(f"s(0) = (10.05 - 0.1) / 10.05 = {s0:.5f}")

# ---------------------------------------------------------------------------
# Under the default EXCLUDE policy the noise point is invisible: it gets no
# score and contributes to nobody's a/b sums.  AS_SINGLETONS turns it into
# its own one-point cluster instead (singletons score exactly 0).

for policy in (NoisePolicy.EXCLUDE, NoisePolicy.AS_SINGLETONS):
    report = silhouette_report(labeling, dm, policy)
    print(f"\npolicy={policy.value}: mean={report.mean:.5f}")
    print("  per point:", np.round(report.per_point, 5))

# ---------------------------------------------------------------------------
# A labeling with fewer than two clusters has no separation to measure and
# scores 0 by convention.

single = ClusterLabeling(labels=np.zeros(5, dtype=int), k=1, method="dbscan", params=None)
print("\nsingle-cluster labeling scores:", silhouette_report(single, dm).mean)
