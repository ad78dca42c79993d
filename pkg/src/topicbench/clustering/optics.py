"""Reachability-ordering clustering (OPTICS) over a precomputed distance
matrix, with automatic cluster extraction from the reachability plot.

The ordering pass runs with an unbounded neighborhood radius: the core
distance of a point is its ``min_pts``-th smallest distance (itself
included), every point is expandable, and the next point visited is always
the unprocessed one with the smallest current reachability (ties to the
lower index).  The first visited point has no predecessor, so its
reachability stays infinite.

Cluster extraction uses the steep-region ("xi") method on the ordered
reachability values with a fixed steepness XI = 0.05 and minimum cluster
size equal to ``min_pts``.  Points outside every extracted region are noise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..metricspace import DistanceMatrix
from .types import NOISE, OPTICS, ClusterLabeling, OpticsParams

XI = 0.05


@dataclass(frozen=True)
class ReachabilityPlot:
    ordering: np.ndarray  # visit order: permutation of point indices
    reachability: np.ndarray  # per point index; reachability[ordering[0]] is inf
    core_distance: np.ndarray  # per point index

    def ordered_reachability(self) -> np.ndarray:
        return self.reachability[self.ordering]


def _ordering_pass(d: np.ndarray, min_pts: int) -> ReachabilityPlot:
    n = d.shape[0]
    if min_pts <= n:
        core = np.sort(d, axis=1)[:, min_pts - 1]
    else:
        core = np.full(n, np.inf)
    reach = np.full(n, np.inf)
    processed = np.zeros(n, dtype=bool)
    ordering = np.empty(n, dtype=np.int64)
    for step in range(n):
        candidates = np.flatnonzero(~processed)
        point = int(candidates[np.argmin(reach[candidates])])
        processed[point] = True
        ordering[step] = point
        if np.isfinite(core[point]):
            unproc = np.flatnonzero(~processed)
            rdist = np.maximum(d[point, unproc], core[point])
            improved = rdist < reach[unproc]
            reach[unproc[improved]] = rdist[improved]
    return ReachabilityPlot(ordering=ordering, reachability=reach, core_distance=core)


def _extend_region(steep: np.ndarray, opposite: np.ndarray, start: int, min_pts: int) -> int:
    """Largest end index of the steep region beginning at ``start``.

    The region may contain short runs (at most ``min_pts``) of non-steep
    points moving in the same direction, but no point moving the other way.
    """
    n = len(steep)
    index = start
    end = start
    slack = 0
    while index < n:
        if steep[index]:
            slack = 0
            end = index
        elif not opposite[index]:
            slack += 1
            if slack > min_pts:
                break
        else:
            break
        index += 1
    return end


def _xi_clusters(r_plot: np.ndarray, min_pts: int, min_cluster_size: int) -> list[tuple[int, int]]:
    """Extract (start, end) index intervals (inclusive) of clusters from the
    ordered reachability values."""
    # trailing inf so a cluster running to the end of the plot still closes
    r = np.hstack([r_plot, np.inf])
    one_minus_xi = 1.0 - XI
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = r[:-1] / r[1:]
        steep_up = ratio <= one_minus_xi
        steep_down = ratio >= 1.0 / one_minus_xi
        upward = ratio < 1.0
        downward = ratio > 1.0

    clusters: list[tuple[int, int]] = []
    sdas: list[dict] = []  # steep-down areas still eligible to open a cluster
    index = 0
    mib = 0.0  # max reachability seen since the last steep area

    for steep_index in np.flatnonzero(steep_up | steep_down):
        steep_index = int(steep_index)
        if steep_index < index:
            continue
        mib = max(mib, float(np.max(r[index : steep_index + 1])))

        if steep_down[steep_index]:
            sdas = _filter_sdas(sdas, mib, one_minus_xi, r)
            start = steep_index
            end = _extend_region(steep_down, upward, start, min_pts)
            sdas.append({"start": start, "end": end, "mib": 0.0})
            index = end + 1
            mib = float(r[index])
        else:
            sdas = _filter_sdas(sdas, mib, one_minus_xi, r)
            u_start = steep_index
            u_end = _extend_region(steep_up, downward, u_start, min_pts)
            index = u_end + 1
            mib = float(r[index])

            found: list[tuple[int, int]] = []
            for area in sdas:
                c_start, c_end = area["start"], u_end
                if r[c_end + 1] * one_minus_xi < area["mib"]:
                    continue
                d_max = r[area["start"]]
                if d_max * one_minus_xi >= r[c_end + 1]:
                    # align the left edge with the level where the cluster ends
                    while r[c_start + 1] > r[c_end + 1] and c_start < area["end"]:
                        c_start += 1
                elif r[c_end + 1] * one_minus_xi >= d_max:
                    while r[c_end - 1] > d_max and c_end > u_start:
                        c_end -= 1
                if c_end - c_start + 1 < min_cluster_size:
                    continue
                if c_start > area["end"] or c_end < u_start:
                    continue
                found.append((c_start, c_end))
            found.reverse()  # nested (smaller) clusters first
            clusters.extend(found)
    return clusters


def _filter_sdas(sdas: list[dict], mib: float, one_minus_xi: float, r: np.ndarray) -> list[dict]:
    if np.isinf(mib):
        return []
    kept = [a for a in sdas if mib <= r[a["start"]] * one_minus_xi]
    for a in kept:
        a["mib"] = max(a["mib"], mib)
    return kept


def _labels_from_clusters(
    ordering: np.ndarray, clusters: list[tuple[int, int]]
) -> tuple[np.ndarray, int]:
    plot_labels = np.full(len(ordering), NOISE, dtype=np.int64)
    label = 0
    for start, end in clusters:
        if np.all(plot_labels[start : end + 1] == NOISE):
            plot_labels[start : end + 1] = label
            label += 1
    labels = np.full(len(ordering), NOISE, dtype=np.int64)
    labels[ordering] = plot_labels
    return labels, label


def optics(dm: DistanceMatrix, min_pts: int) -> tuple[ReachabilityPlot, ClusterLabeling]:
    params = OpticsParams(min_pts=min_pts)
    plot = _ordering_pass(dm.d, min_pts)
    clusters = _xi_clusters(plot.ordered_reachability(), min_pts, min_cluster_size=min_pts)
    labels, k = _labels_from_clusters(plot.ordering, clusters)
    return plot, ClusterLabeling(labels=labels, k=k, method=OPTICS, params=params)
