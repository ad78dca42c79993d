"""Result emitters: tables, tuning-sweep curves, parameter heat grids, and
per-cluster topic term lists.

Every emitter writes deterministic UTF-8 text with LF line endings and "."
decimals; rendering (plots, word clouds) is left to external tools.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .clustering.types import (
    JARVIS_PATRICK,
    NOISE,
    ClusterLabeling,
    JarvisPatrickParams,
)
from .corpus import CleanTweet
from .harness import ExperimentRecord, ResultRecord, write_results

_SINGLE_PARAM_FIELD = {"k-means": "k", "optics": "min_pts", "spectral": "k"}


@dataclass(frozen=True)
class TopicSummary:
    cluster: int
    terms: list[tuple[str, int]]  # (token, frequency), descending frequency
    size: int


@dataclass(frozen=True)
class SweepCurve:
    method: str
    parameter: str
    points: list[tuple[float, float]]  # (parameter value, silhouette), ascending


@dataclass(frozen=True)
class HeatGrid:
    ks: list[int]
    k_ts: list[int]
    cells: dict[tuple[int, int], float]  # present iff k_t <= k


def extract_topics(
    labeling: ClusterLabeling, tweets: Sequence[CleanTweet], top_n: int = 10
) -> list[TopicSummary]:
    """Most frequent word tokens per cluster (frequency ties break
    lexicographically).  ``tweets`` must align with the labeling's points."""
    if len(tweets) != labeling.n:
        raise ValueError(f"labeling covers {labeling.n} points, got {len(tweets)} tweets")
    summaries: list[TopicSummary] = []
    for cluster in range(labeling.k):
        members = [tweets[i] for i in range(labeling.n) if labeling.labels[i] == cluster]
        counts: Counter[str] = Counter()
        for t in members:
            counts.update(t.word_tokens)
        ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:top_n]
        summaries.append(TopicSummary(cluster=cluster, terms=ranked, size=len(members)))
    return summaries


def emit_topics(summaries: list[TopicSummary], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("cluster\tsize\tterm\tcount\n")
        for s in summaries:
            for term, count in s.terms:
                fh.write(f"{s.cluster}\t{s.size}\t{term}\t{count}\n")


def emit_results_table(records: list[ResultRecord], path: str) -> None:
    """The tuned-results table: one row per combination, canonical order as
    given.  Round-trips through the results parser."""
    write_results(records, path)


def _slice_identity(experiments: Sequence[ExperimentRecord]) -> tuple[str, str, str]:
    methods = {r.method for r in experiments}
    metrics = {r.metric for r in experiments}
    embedders = {r.embedder for r in experiments}
    if len(methods) != 1 or len(metrics) != 1 or len(embedders) != 1:
        raise ValueError("expected records for a single (embedder, metric, method) slice")
    return next(iter(methods)), next(iter(metrics)).value, next(iter(embedders))


def sweep_curve(experiments: Sequence[ExperimentRecord]) -> SweepCurve:
    if not experiments:
        raise ValueError("empty experiment slice")
    method, _, _ = _slice_identity(experiments)
    field = _SINGLE_PARAM_FIELD.get(method)
    if field is None:
        raise ValueError(f"{method} is not a single-parameter method")
    points = sorted((float(getattr(r.params, field)), r.score) for r in experiments)
    values = [v for v, _ in points]
    if len(set(values)) != len(values):
        raise ValueError("duplicate parameter values in sweep slice")
    return SweepCurve(method=method, parameter=field, points=points)


def emit_sweep(experiments: Sequence[ExperimentRecord], path: str) -> SweepCurve:
    curve = sweep_curve(experiments)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{curve.parameter}\tsilhouette\n")
        for value, score in curve.points:
            v = int(value) if float(value).is_integer() else value
            fh.write(f"{v}\t{repr(float(score))}\n")
    return curve


def heat_grid(experiments: Sequence[ExperimentRecord]) -> HeatGrid:
    if not experiments:
        raise ValueError("empty experiment slice")
    method, _, _ = _slice_identity(experiments)
    if method != JARVIS_PATRICK:
        raise ValueError(f"heat grids apply to {JARVIS_PATRICK} only, got {method}")
    cells: dict[tuple[int, int], float] = {}
    for r in experiments:
        assert isinstance(r.params, JarvisPatrickParams)
        key = (r.params.k, r.params.k_t)
        if key in cells:
            raise ValueError(f"duplicate grid cell {key}")
        cells[key] = r.score
    ks = sorted({k for k, _ in cells})
    k_ts = sorted({t for _, t in cells})
    return HeatGrid(ks=ks, k_ts=k_ts, cells=cells)


def emit_heatgrid(experiments: Sequence[ExperimentRecord], path: str) -> HeatGrid:
    grid = heat_grid(experiments)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("k\tk_t\tsilhouette\n")
        for k, k_t in sorted(grid.cells):
            fh.write(f"{k}\t{k_t}\t{repr(float(grid.cells[(k, k_t)]))}\n")
    return grid


def noise_count(labeling: ClusterLabeling) -> int:
    return int((labeling.labels == NOISE).sum())


def supports_sweep(method: str) -> bool:
    return method in _SINGLE_PARAM_FIELD


def supports_heatgrid(method: str) -> bool:
    return method == JARVIS_PATRICK


__all__ = [
    "HeatGrid",
    "SweepCurve",
    "TopicSummary",
    "emit_heatgrid",
    "emit_results_table",
    "emit_sweep",
    "emit_topics",
    "extract_topics",
    "heat_grid",
    "noise_count",
    "supports_heatgrid",
    "supports_sweep",
    "sweep_curve",
]
