import itertools

import numpy as np
import pytest

from oracles import partitions_equal
from topicbench.clustering import kmeans
from topicbench.metricspace import Metric


def _two_groups(rng, separation=10.0):
    a = rng.standard_normal((5, 3)) * 0.2
    b = rng.standard_normal((5, 3)) * 0.2 + separation
    return np.vstack([a, b])


def _sq_euclidean_objective(points, labels):
    total = 0.0
    for c in set(labels):
        members = points[np.asarray(labels) == c]
        centroid = members.mean(axis=0)
        total += float(((members - centroid) ** 2).sum())
    return total


class TestEuclideanKMeans:
    def test_k_equals_n_distinct_points(self):
        rng = np.random.default_rng(0)
        points = rng.standard_normal((6, 2))
        labeling = kmeans(points, Metric.EUCLIDEAN, k=6, seed=1)
        assert sorted(labeling.labels) == list(range(6))
        assert labeling.objective_history[-1] == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_two_groups_minimize_variance_brute_force(self, seed):
        rng = np.random.default_rng(seed)
        points = _two_groups(rng)
        labeling = kmeans(points, Metric.EUCLIDEAN, k=2, seed=seed)

        # enumerate every 2-partition of the 10 points
        best_obj, best_sets = np.inf, None
        indices = range(10)
        for size in range(1, 10):
            for left in itertools.combinations(indices, size):
                labels = [0 if i in set(left) else 1 for i in indices]
                obj = _sq_euclidean_objective(points, labels)
                if obj < best_obj - 1e-12:
                    best_obj, best_sets = obj, labels
        assert partitions_equal(list(labeling.labels), best_sets)
        assert labeling.objective_history[-1] == pytest.approx(best_obj)
        # and the optimum is the two construction groups
        assert partitions_equal(best_sets, [0] * 5 + [1] * 5)

    def test_deterministic_given_seed(self):
        rng = np.random.default_rng(9)
        points = rng.standard_normal((30, 4))
        a = kmeans(points, Metric.EUCLIDEAN, k=5, seed=42)
        b = kmeans(points, Metric.EUCLIDEAN, k=5, seed=42)
        assert np.array_equal(a.labels, b.labels)
        assert a.objective_history == b.objective_history

    @pytest.mark.parametrize("seed", range(10))
    def test_objective_never_increases(self, seed):
        rng = np.random.default_rng(seed)
        points = rng.standard_normal((40, 3))
        labeling = kmeans(points, Metric.EUCLIDEAN, k=4, seed=seed)
        hist = labeling.objective_history
        assert all(hist[i + 1] <= hist[i] + 1e-9 for i in range(len(hist) - 1))

    def test_k_larger_than_n_rejected(self):
        with pytest.raises(ValueError):
            kmeans(np.zeros((3, 2)) + np.arange(3)[:, None], Metric.EUCLIDEAN, k=4)

    def test_all_clusters_non_empty(self):
        rng = np.random.default_rng(3)
        points = rng.standard_normal((20, 2))
        labeling = kmeans(points, Metric.EUCLIDEAN, k=7, seed=0)
        assert set(labeling.labels.tolist()) == set(range(7))

    def test_duplicate_points_still_fill_k_clusters(self):
        points = np.array([[1.0, 0.0]] * 4 + [[0.0, 1.0]] * 4)
        labeling = kmeans(points, Metric.EUCLIDEAN, k=3, seed=0)
        assert set(labeling.labels.tolist()) == {0, 1, 2}


class TestSphericalKMeans:
    def test_directional_groups_recovered(self):
        rng = np.random.default_rng(1)
        a = np.array([1.0, 0.0, 0.0]) + rng.standard_normal((6, 3)) * 0.05
        b = np.array([0.0, 1.0, 0.0]) + rng.standard_normal((6, 3)) * 0.05
        points = np.vstack([a, b])
        labeling = kmeans(points, Metric.COSINE, k=2, seed=0)
        assert partitions_equal(list(labeling.labels), [0] * 6 + [1] * 6)

    def test_scale_of_input_is_ignored(self):
        rng = np.random.default_rng(2)
        points = rng.standard_normal((15, 4))
        scales = rng.uniform(0.5, 5.0, size=15)[:, None]
        a = kmeans(points, Metric.COSINE, k=3, seed=7)
        b = kmeans(points * scales, Metric.COSINE, k=3, seed=7)
        assert np.array_equal(a.labels, b.labels)

    @pytest.mark.parametrize("seed", range(10))
    def test_cosine_objective_never_increases(self, seed):
        rng = np.random.default_rng(seed + 100)
        points = rng.standard_normal((40, 5))
        labeling = kmeans(points, Metric.COSINE, k=4, seed=seed)
        hist = labeling.objective_history
        assert all(hist[i + 1] <= hist[i] + 1e-9 for i in range(len(hist) - 1))

    def test_zero_norm_rejected(self):
        points = np.array([[0.0, 0.0], [1.0, 0.0]])
        with pytest.raises(ValueError, match="zero-norm"):
            kmeans(points, Metric.COSINE, k=2)
