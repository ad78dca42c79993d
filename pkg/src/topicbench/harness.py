"""Factorial benchmark harness.

A plan names an ordered set of embedders, distance metrics and clustering
methods plus a parameter grid per method.  For every (embedder, metric,
method) combination the harness evaluates the whole grid, keeps the best
silhouette (ties resolve to the smallest parameters), and aggregates the
resulting grid of best scores into per-factor means and rank tables.

Everything is deterministic: per-experiment seeds derive from the master
seed and the combination identity, experiment records are persisted in
canonical order as they complete, and a re-run (or a resumed run) of the
same plan produces byte-identical files.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import logging
import os
from dataclasses import dataclass

import numpy as np

from . import __version__
from .clustering import (
    ALL_METHODS,
    DBSCAN,
    JARVIS_PATRICK,
    KMEANS,
    OPTICS,
    SPECTRAL,
    ClusterParams,
    DbscanParams,
    JarvisPatrickParams,
    KMeansParams,
    OpticsParams,
    SpectralParams,
    dbscan,
    format_params,
    jarvis_patrick,
    kmeans,
    optics,
    params_key,
    parse_params,
    spectral,
)
from .corpus import Chunk
from .embedding import EmbeddedChunk, EmbedderSpec, EmbeddingSources, embed_chunk
from .errors import FormatError, TopicbenchError
from .evaluation import NoisePolicy, silhouette_score
from .metricspace import DistanceMatrix, Metric, build_distance_matrix, to_similarity

log = logging.getLogger(__name__)

EXPERIMENTS_FILE = "experiments.tsv"
RESULTS_FILE = "results.tsv"
MANIFEST_FILE = "manifest.json"

_RESULTS_HEADER = "clustering_method\tdistance_metric\tembedding_method\tbest_params\tsilhouette"
_EXPERIMENTS_HEADER = (
    "clustering_method\tdistance_metric\tembedding_method\tparams\tsilhouette\tstatus\tnote"
)


@dataclass(frozen=True)
class ExperimentRecord:
    embedder: str
    metric: Metric
    method: str
    params: ClusterParams
    score: float
    failed: bool = False
    note: str = "-"


@dataclass(frozen=True)
class ResultRecord:
    embedder: str
    metric: Metric
    method: str
    best_params: ClusterParams | None
    score: float
    failed: bool = False


@dataclass(frozen=True)
class MarginalReport:
    embedder_results: dict[str, float]  # mean over (metric, method)
    metric_results: dict[Metric, float]  # mean over (embedder, method)
    method_results: dict[str, float]  # mean over (embedder, metric)


def default_grids() -> dict[str, list[ClusterParams]]:
    """The published tuning grids: 48 / 2400 / 48 / 48 / 5005 points."""
    return {
        KMEANS: [KMeansParams(k) for k in range(2, 50)],
        DBSCAN: [
            DbscanParams(eps=i / 10, min_pts=m)
            for i in range(1, 51)
            for m in range(2, 50)
        ],
        OPTICS: [OpticsParams(m) for m in range(2, 50)],
        SPECTRAL: [SpectralParams(k) for k in range(2, 50)],
        JARVIS_PATRICK: [
            JarvisPatrickParams(k=k, k_t=t) for k in range(10, 101) for t in range(1, k + 1)
        ],
    }


def demo_grids() -> dict[str, list[ClusterParams]]:
    """Reduced grids sized so a full factorial run finishes in minutes."""
    return {
        KMEANS: [KMeansParams(k) for k in range(2, 9)],
        DBSCAN: [
            DbscanParams(eps=i / 10, min_pts=m) for i in range(1, 11) for m in (3, 5)
        ],
        OPTICS: [OpticsParams(m) for m in range(3, 9)],
        SPECTRAL: [SpectralParams(k) for k in range(2, 9)],
        JARVIS_PATRICK: [
            JarvisPatrickParams(k=k, k_t=t) for k in (10, 15) for t in range(1, k + 1)
        ],
    }


@dataclass
class ExperimentPlan:
    embedders: list[EmbedderSpec]
    metrics: list[Metric]
    methods: list[str]
    grids: dict[str, list[ClusterParams]]
    seed: int
    chunk: Chunk
    sources: EmbeddingSources

    def __post_init__(self):
        if not self.embedders or not self.metrics or not self.methods:
            raise ValueError("plan needs at least one embedder, metric and method")
        names = [s.name for s in self.embedders]
        if len(set(names)) != len(names):
            raise ValueError("embedder names must be unique within a plan")
        for m in self.methods:
            if m not in ALL_METHODS:
                raise ValueError(f"unknown clustering method {m!r}")
            if not self.grids.get(m):
                raise ValueError(f"empty tuning grid for {m!r}")

    @property
    def combination_count(self) -> int:
        return len(self.embedders) * len(self.metrics) * len(self.methods)


class PlanContext:
    """Per-run caches: embeddings per embedder, matrices per (embedder, metric)."""

    def __init__(self, plan: ExperimentPlan):
        self.plan = plan
        self._embedded: dict[str, EmbeddedChunk] = {}
        self._matrices: dict[tuple[str, Metric], DistanceMatrix] = {}
        self._specs = {s.name: s for s in plan.embedders}

    def embedded(self, embedder: str) -> EmbeddedChunk:
        if embedder not in self._embedded:
            self._embedded[embedder] = embed_chunk(
                self.plan.chunk, self._specs[embedder], self.plan.sources
            )
        return self._embedded[embedder]

    def matrix(self, embedder: str, metric: Metric) -> DistanceMatrix:
        key = (embedder, metric)
        if key not in self._matrices:
            self._matrices[key] = build_distance_matrix(self.embedded(embedder), metric)
        return self._matrices[key]


def derive_seed(master_seed: int, embedder: str, metric: Metric, method: str,
                params: ClusterParams) -> int:
    text = f"{master_seed}|{embedder}|{metric.value}|{method}|{format_params(params)}"
    return int.from_bytes(hashlib.blake2b(text.encode(), digest_size=8).digest(), "big")


def cluster_combination(ctx: PlanContext, embedder: str, metric: Metric, method: str,
                        params: ClusterParams):
    """Run one clustering configuration; returns (labeling, distance matrix)."""
    seed = derive_seed(ctx.plan.seed, embedder, metric, method, params)
    dm = ctx.matrix(embedder, metric)
    if method == KMEANS:
        labeling = kmeans(ctx.embedded(embedder).rows, metric, params.k, seed)
    elif method == DBSCAN:
        labeling = dbscan(dm, params.eps, params.min_pts)
    elif method == OPTICS:
        _, labeling = optics(dm, params.min_pts)
    elif method == SPECTRAL:
        labeling = spectral(to_similarity(dm), params.k, seed)
    elif method == JARVIS_PATRICK:
        labeling = jarvis_patrick(dm, params.k, params.k_t)
    else:
        raise ValueError(f"unknown clustering method {method!r}")
    return labeling, dm


def run_experiment(ctx: PlanContext, embedder: str, metric: Metric, method: str,
                   params: ClusterParams) -> ExperimentRecord:
    """One clustering run scored by silhouette on the same distance matrix.

    Data-level failures (degenerate chunk, all-noise labelings, infeasible
    parameters for the chunk size) are recorded with score 0 and a note
    instead of aborting the sweep.
    """
    try:
        labeling, dm = cluster_combination(ctx, embedder, metric, method, params)
        score = silhouette_score(labeling, dm, NoisePolicy.EXCLUDE)
    except (TopicbenchError, ValueError) as e:
        return ExperimentRecord(
            embedder=embedder, metric=metric, method=method, params=params,
            score=0.0, failed=True, note=f"{type(e).__name__}: {e}",
        )
    return ExperimentRecord(
        embedder=embedder, metric=metric, method=method, params=params, score=score
    )


def tune(ctx: PlanContext, embedder: str, metric: Metric, method: str,
         existing: dict[tuple, ExperimentRecord] | None = None,
         on_record=None) -> tuple[ResultRecord, list[ExperimentRecord]]:
    """Evaluate the whole grid for one combination and keep the best score.

    Ties prefer successful runs, then the smallest parameters (pairs compare
    lexicographically).  ``existing`` supplies already-computed records (for
    resume); ``on_record`` is called for each newly computed record.
    """
    grid = ctx.plan.grids[method]
    records: list[ExperimentRecord] = []
    for params in grid:
        key = (method, metric.value, embedder, format_params(params))
        record = existing.get(key) if existing else None
        if record is None:
            record = run_experiment(ctx, embedder, metric, method, params)
        if on_record is not None:
            on_record(record)
        records.append(record)

    best = min(
        records, key=lambda r: (-r.score, r.failed, params_key(r.params))
    )
    if best.failed:
        result = ResultRecord(
            embedder=embedder, metric=metric, method=method,
            best_params=None, score=0.0, failed=True,
        )
    else:
        result = ResultRecord(
            embedder=embedder, metric=metric, method=method,
            best_params=best.params, score=best.score,
        )
    return result, records


def _canonical_result_order(plan: ExperimentPlan, records: list[ResultRecord]) -> list[ResultRecord]:
    emb_order = {s.name: i for i, s in enumerate(plan.embedders)}
    met_order = {m: i for i, m in enumerate(plan.metrics)}
    meth_order = {m: i for i, m in enumerate(plan.methods)}
    return sorted(
        records,
        key=lambda r: (met_order[r.metric], meth_order[r.method], emb_order[r.embedder]),
    )


def run_plan(plan: ExperimentPlan, out_dir: str, resume: bool = False) -> list[ResultRecord]:
    """Run (or resume) every combination of the plan.

    Writes three files under ``out_dir``: the experiments log (one row per
    grid point, appended as computed, rewritten merged in canonical order on
    resume), the results table (one row per combination), and a manifest
    recording seed, input hashes and versions.  Returns the result records
    in plan (embedder x metric x method) order.
    """
    os.makedirs(out_dir, exist_ok=True)
    experiments_path = os.path.join(out_dir, EXPERIMENTS_FILE)

    existing: dict[tuple, ExperimentRecord] = {}
    if resume and os.path.exists(experiments_path):
        for rec in read_experiments(experiments_path, strict=False):
            existing[(rec.method, rec.metric.value, rec.embedder, format_params(rec.params))] = rec
        log.info("resume: reusing %d experiment record(s)", len(existing))

    ctx = PlanContext(plan)
    results: list[ResultRecord] = []
    with open(experiments_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_EXPERIMENTS_HEADER + "\n")

        def persist(record: ExperimentRecord) -> None:
            fh.write(_experiment_line(record) + "\n")
            fh.flush()

        # the loop below visits combinations and grid points in canonical
        # order, so appending records as they complete (reused or fresh)
        # yields the same bytes for a fresh run and a resumed one
        for spec, metric, method in itertools.product(plan.embedders, plan.metrics, plan.methods):
            result, _ = tune(
                ctx, spec.name, metric, method, existing=existing, on_record=persist
            )
            results.append(result)
            log.info(
                "tuned %s / %s / %s: best=%.6f%s",
                spec.name, metric.value, method, result.score,
                " (failed)" if result.failed else "",
            )

    write_results(_canonical_result_order(plan, results), os.path.join(out_dir, RESULTS_FILE))
    _write_manifest(plan, os.path.join(out_dir, MANIFEST_FILE))
    return results


def _hash_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _write_manifest(plan: ExperimentPlan, path: str) -> None:
    chunk_digest = _hash_text(
        "\n".join(f"{t.id}\t{' '.join(t.word_tokens)}" for t in plan.chunk.tweets)
    )
    grid_digest = _hash_text(
        json.dumps(
            {m: [format_params(p) for p in g] for m, g in plan.grids.items()},
            sort_keys=True,
        )
    )
    manifest = {
        "seed": plan.seed,
        "embedders": [
            {"name": s.name, "kind": s.kind, "dim": s.dim, "seed": s.seed}
            for s in plan.embedders
        ],
        "metrics": [m.value for m in plan.metrics],
        "methods": list(plan.methods),
        "combinations": plan.combination_count,
        "chunk_id": plan.chunk.chunk_id,
        "chunk_sha256": chunk_digest,
        "grids_sha256": grid_digest,
        "topicbench_version": __version__,
        "numpy_version": np.__version__,
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# Aggregation


def _axes(records: list[ResultRecord]) -> tuple[list[str], list[Metric], list[str]]:
    """Factor orderings by first appearance in the record list."""
    embedders: list[str] = []
    metrics: list[Metric] = []
    methods: list[str] = []
    for r in records:
        if r.embedder not in embedders:
            embedders.append(r.embedder)
        if r.metric not in metrics:
            metrics.append(r.metric)
        if r.method not in methods:
            methods.append(r.method)
    return embedders, metrics, methods


def _grid_index(records: list[ResultRecord]) -> dict[tuple[str, Metric, str], ResultRecord]:
    embedders, metrics, methods = _axes(records)
    index: dict[tuple[str, Metric, str], ResultRecord] = {}
    for r in records:
        key = (r.embedder, r.metric, r.method)
        if key in index:
            raise ValueError(f"duplicate result record for {key}")
        index[key] = r
    missing = [
        key
        for key in itertools.product(embedders, metrics, methods)
        if key not in index
    ]
    if missing:
        cells = ", ".join(f"({e}, {m.value}, {c})" for e, m, c in missing)
        raise ValueError(f"incomplete result grid; missing cells: {cells}")
    return index


def compute_marginals(records: list[ResultRecord]) -> MarginalReport:
    """Per-factor means of the best scores, averaging out the other factors."""
    embedders, metrics, methods = _axes(records)
    index = _grid_index(records)
    embedder_results = {
        e: float(np.mean([index[(e, m, c)].score for m in metrics for c in methods]))
        for e in embedders
    }
    metric_results = {
        m: float(np.mean([index[(e, m, c)].score for e in embedders for c in methods]))
        for m in metrics
    }
    method_results = {
        c: float(np.mean([index[(e, m, c)].score for e in embedders for m in metrics]))
        for c in methods
    }
    return MarginalReport(
        embedder_results=embedder_results,
        metric_results=metric_results,
        method_results=method_results,
    )


def rank_embeddings(records: list[ResultRecord]) -> dict[tuple[Metric, str], dict[str, int]]:
    """Per (metric, method) column: rank of each embedder by descending score,
    rank 1 best, ties to the earlier embedder."""
    embedders, metrics, methods = _axes(records)
    index = _grid_index(records)
    out: dict[tuple[Metric, str], dict[str, int]] = {}
    for m in metrics:
        for c in methods:
            scored = [(-index[(e, m, c)].score, pos, e) for pos, e in enumerate(embedders)]
            scored.sort()
            out[(m, c)] = {e: rank + 1 for rank, (_, _, e) in enumerate(scored)}
    return out


def rank_metric_duel(records: list[ResultRecord]) -> dict[tuple[str, str], int]:
    """Per (embedder, method) cell: rank of cosine against normalized
    Euclidean; cosine must strictly win to take rank 1."""
    embedders, metrics, methods = _axes(records)
    if set(metrics) != {Metric.EUCLIDEAN, Metric.COSINE}:
        raise ValueError("metric duel needs exactly the euclidean and cosine metrics")
    index = _grid_index(records)
    out: dict[tuple[str, str], int] = {}
    for e in embedders:
        for c in methods:
            cos = index[(e, Metric.COSINE, c)].score
            euc = index[(e, Metric.EUCLIDEAN, c)].score
            out[(e, c)] = 1 if cos > euc else 2
    return out


# ---------------------------------------------------------------------------
# Text formats


def _experiment_line(r: ExperimentRecord) -> str:
    status = "failed" if r.failed else "ok"
    return "\t".join(
        [r.method, r.metric.value, r.embedder, format_params(r.params),
         repr(float(r.score)), status, r.note.replace("\t", " ").replace("\n", " ")]
    )


def write_experiments(records: list[ExperimentRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_EXPERIMENTS_HEADER + "\n")
        for r in records:
            fh.write(_experiment_line(r) + "\n")


def read_experiments(path: str, strict: bool = True) -> list[ExperimentRecord]:
    records: list[ExperimentRecord] = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if header != _EXPERIMENTS_HEADER:
            raise FormatError("unrecognized experiments header", path=path, line=1)
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 7:
                if strict:
                    raise FormatError("expected 7 tab-separated fields", path=path, line=lineno)
                continue  # tolerate a truncated trailing line when resuming
            method, metric_text, embedder, params_text, score_text, status, note = parts
            try:
                records.append(
                    ExperimentRecord(
                        embedder=embedder,
                        metric=Metric.parse(metric_text),
                        method=method,
                        params=parse_params(method, params_text),
                        score=float(score_text),
                        failed=(status == "failed"),
                        note=note,
                    )
                )
            except (ValueError, FormatError):
                if strict:
                    raise
                continue
    return records


def write_results(records: list[ResultRecord], path: str) -> None:
    if not records:
        raise ValueError("refusing to write an empty results table")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_RESULTS_HEADER + "\n")
        for r in records:
            fh.write(
                "\t".join(
                    [r.method, r.metric.value, r.embedder,
                     format_params(r.best_params), repr(float(r.score))]
                )
                + "\n"
            )


def reference_results() -> list[ResultRecord]:
    """The reference tuned-score table shipped with the package (used by the
    analysis-stage tests and demos)."""
    from importlib import resources

    ref = resources.files("topicbench.data").joinpath("reference_results.tsv")
    with resources.as_file(ref) as p:
        return read_results(str(p))


def read_results(path: str) -> list[ResultRecord]:
    records: list[ResultRecord] = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if header != _RESULTS_HEADER:
            raise FormatError("unrecognized results header", path=path, line=1)
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 5:
                raise FormatError("expected 5 tab-separated fields", path=path, line=lineno)
            method, metric_text, embedder, params_text, score_text = parts
            try:
                records.append(
                    ResultRecord(
                        embedder=embedder,
                        metric=Metric.parse(metric_text),
                        method=method,
                        best_params=parse_params(method, params_text),
                        score=float(score_text),
                    )
                )
            except ValueError as e:
                raise FormatError(str(e), path=path, line=lineno) from e
    return records
