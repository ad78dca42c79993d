import itertools

import numpy as np
import pytest

from topicbench import synthetic
from topicbench.clustering import (
    DBSCAN,
    JARVIS_PATRICK,
    KMEANS,
    OPTICS,
    SPECTRAL,
    DbscanParams,
    KMeansParams,
    OpticsParams,
    SpectralParams,
    format_params,
    kmeans,
    parse_params,
)
from topicbench.embedding import EmbedderSpec, EmbeddingSources, embed_chunk
from topicbench.errors import FormatError
from topicbench.evaluation import silhouette_score
from topicbench.harness import (
    ExperimentPlan,
    PlanContext,
    ResultRecord,
    compute_marginals,
    default_grids,
    demo_grids,
    derive_seed,
    rank_embeddings,
    rank_metric_duel,
    read_experiments,
    read_results,
    reference_results,
    run_experiment,
    run_plan,
    tune,
    write_experiments,
    write_results,
)
from topicbench.metricspace import Metric, build_distance_matrix


def _plan(chunk, embedders=None, metrics=None, methods=None, grids=None, seed=7):
    embedders = embedders or [EmbedderSpec.synthetic("syn-a", dim=32, seed=1)]
    return ExperimentPlan(
        embedders=embedders,
        metrics=metrics or [Metric.COSINE],
        methods=methods or [KMEANS],
        grids=grids or {KMEANS: [KMeansParams(k) for k in range(2, 7)]},
        seed=seed,
        chunk=chunk,
        sources=EmbeddingSources(embedders),
    )


class TestGrids:
    def test_published_cardinalities(self):
        grids = default_grids()
        assert len(grids[KMEANS]) == 48
        assert len(grids[DBSCAN]) == 2400
        assert len(grids[OPTICS]) == 48
        assert len(grids[SPECTRAL]) == 48
        assert len(grids[JARVIS_PATRICK]) == 5005
        assert sum(map(len, grids.values())) == 7549

    def test_dbscan_eps_values_clean(self):
        grids = default_grids()
        eps_values = sorted({p.eps for p in grids[DBSCAN]})
        assert eps_values[0] == 0.1 and eps_values[-1] == 5.0
        assert len(eps_values) == 50

    def test_jp_triangular(self):
        grids = default_grids()
        for p in grids[JARVIS_PATRICK]:
            assert 1 <= p.k_t <= p.k

    def test_demo_grids_nonempty(self):
        for method, grid in demo_grids().items():
            assert grid, method


class TestRunExperiment:
    def test_two_blob_kmeans_scores_high(self):
        chunk = synthetic.blob_chunk(2, 10, seed=3)
        plan = _plan(chunk)
        ctx = PlanContext(plan)
        rec = run_experiment(ctx, "syn-a", Metric.COSINE, KMEANS, KMeansParams(2))
        assert not rec.failed
        assert rec.score > 0.5

    def test_identical_runs_bit_identical(self):
        chunk = synthetic.blob_chunk(2, 8, seed=4)
        plan = _plan(chunk)
        a = run_experiment(PlanContext(plan), "syn-a", Metric.COSINE, KMEANS, KMeansParams(3))
        b = run_experiment(PlanContext(plan), "syn-a", Metric.COSINE, KMEANS, KMeansParams(3))
        assert a == b

    def test_all_noise_dbscan_flagged(self):
        chunk = synthetic.blob_chunk(2, 6, seed=5)
        plan = _plan(chunk, methods=[DBSCAN], grids={DBSCAN: [DbscanParams(1e-6, 2)]})
        rec = run_experiment(PlanContext(plan), "syn-a", Metric.COSINE, DBSCAN, DbscanParams(1e-6, 2))
        assert rec.failed
        assert rec.score == 0.0
        assert "noise" in rec.note or "evaluate" in rec.note

    def test_infeasible_k_flagged(self):
        chunk = synthetic.blob_chunk(2, 3, seed=6)  # 6 points
        plan = _plan(chunk)
        rec = run_experiment(PlanContext(plan), "syn-a", Metric.COSINE, KMEANS, KMeansParams(40))
        assert rec.failed and rec.score == 0.0

    def test_seed_derivation_stable(self):
        s1 = derive_seed(7, "a", Metric.COSINE, KMEANS, KMeansParams(2))
        s2 = derive_seed(7, "a", Metric.COSINE, KMEANS, KMeansParams(2))
        s3 = derive_seed(8, "a", Metric.COSINE, KMEANS, KMeansParams(2))
        assert s1 == s2 != s3


class TestTune:
    def test_singleton_grid(self):
        chunk = synthetic.blob_chunk(2, 6, seed=1)
        plan = _plan(chunk, grids={KMEANS: [KMeansParams(2)]})
        result, records = tune(PlanContext(plan), "syn-a", Metric.COSINE, KMEANS)
        assert result.best_params == KMeansParams(2)
        assert len(records) == 1

    def test_kmeans_peak_at_three_blobs(self):
        chunk = synthetic.blob_chunk(3, 10, seed=2)
        plan = _plan(chunk, grids={KMEANS: [KMeansParams(k) for k in range(2, 7)]})
        ctx = PlanContext(plan)
        result, _ = tune(ctx, "syn-a", Metric.COSINE, KMEANS)

        # independent enumeration over the same grid
        spec = plan.embedders[0]
        e = embed_chunk(chunk, spec, plan.sources)
        dm = build_distance_matrix(e, Metric.COSINE)
        by_k = {}
        for k in range(2, 7):
            seed = derive_seed(plan.seed, "syn-a", Metric.COSINE, KMEANS, KMeansParams(k))
            by_k[k] = silhouette_score(kmeans(e.rows, Metric.COSINE, k, seed), dm)
        best_k = max(sorted(by_k), key=lambda k: by_k[k])
        assert best_k == 3
        assert result.best_params == KMeansParams(3)
        assert result.score == pytest.approx(by_k[3])

    def test_monotone_consistency(self):
        chunk = synthetic.blob_chunk(3, 8, seed=3)
        plan = _plan(chunk, grids={KMEANS: [KMeansParams(k) for k in range(2, 8)]})
        result, records = tune(PlanContext(plan), "syn-a", Metric.COSINE, KMEANS)
        assert all(result.score >= r.score for r in records)

    def test_tie_breaks_to_smaller_parameter(self):
        # both eps values cover everything -> single cluster -> score 0 for both
        chunk = synthetic.blob_chunk(2, 5, seed=4)
        grid = [DbscanParams(3.0, 2), DbscanParams(2.5, 2)]
        plan = _plan(chunk, methods=[DBSCAN], grids={DBSCAN: grid})
        result, records = tune(PlanContext(plan), "syn-a", Metric.COSINE, DBSCAN)
        assert {r.score for r in records} == {0.0}
        assert not result.failed
        assert result.best_params == DbscanParams(2.5, 2)

    def test_all_failed_flagged(self):
        chunk = synthetic.blob_chunk(2, 3, seed=5)  # n = 6
        plan = _plan(chunk, grids={KMEANS: [KMeansParams(30), KMeansParams(40)]})
        result, _ = tune(PlanContext(plan), "syn-a", Metric.COSINE, KMEANS)
        assert result.failed and result.score == 0.0 and result.best_params is None


class TestRunPlan:
    def _small_plan(self, tmp_seed=11):
        chunk = synthetic.blob_chunk(3, 8, seed=9)
        embedders = [
            EmbedderSpec.synthetic("syn-a", dim=16, seed=1),
            EmbedderSpec.synthetic("syn-b", dim=16, seed=2),
        ]
        grids = {
            KMEANS: [KMeansParams(k) for k in (2, 3, 4)],
            DBSCAN: [DbscanParams(e, 3) for e in (0.3, 0.5, 0.8)],
        }
        return _plan(
            chunk,
            embedders=embedders,
            metrics=[Metric.COSINE],
            methods=[KMEANS, DBSCAN],
            grids=grids,
            seed=tmp_seed,
        )

    def test_record_count_matches_product(self, tmp_path):
        plan = self._small_plan()
        results = run_plan(plan, str(tmp_path / "out"))
        assert len(results) == 2 * 1 * 2
        combos = {(r.embedder, r.metric, r.method) for r in results}
        assert len(combos) == 4

    def test_outputs_deterministic(self, tmp_path):
        plan = self._small_plan()
        run_plan(plan, str(tmp_path / "a"))
        run_plan(plan, str(tmp_path / "b"))
        for name in ("experiments.tsv", "results.tsv", "manifest.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_resume_after_truncation_is_bit_identical(self, tmp_path):
        plan = self._small_plan()
        full = tmp_path / "full"
        run_plan(plan, str(full))
        resumed = tmp_path / "resumed"
        run_plan(plan, str(resumed))
        exp = resumed / "experiments.tsv"
        lines = exp.read_text(encoding="utf-8").splitlines(keepends=True)
        # simulate an interrupt: keep header + 5 records and half a line
        exp.write_text("".join(lines[:6]) + lines[6][:10], encoding="utf-8")
        run_plan(plan, str(resumed), resume=True)
        for name in ("experiments.tsv", "results.tsv", "manifest.json"):
            assert (full / name).read_bytes() == (resumed / name).read_bytes()

    def test_results_file_parses_back(self, tmp_path):
        plan = self._small_plan()
        out = tmp_path / "out"
        results = run_plan(plan, str(out))
        parsed = read_results(str(out / "results.tsv"))
        assert len(parsed) == len(results)
        by_key = {(r.embedder, r.metric, r.method): r for r in results}
        for r in parsed:
            original = by_key[(r.embedder, r.metric, r.method)]
            assert r.score == original.score
            assert r.best_params == original.best_params


class TestAggregation:
    def test_fixture_loads_fifty_records(self):
        records = reference_results()
        assert len(records) == 50
        assert all(r.best_params is None for r in records)

    def test_marginals_of_constant_grid(self):
        records = [
            ResultRecord(embedder=e, metric=m, method=c, best_params=None, score=0.25)
            for e, m, c in itertools.product(
                ["e1", "e2"], [Metric.EUCLIDEAN, Metric.COSINE], ["k-means", "dbscan"]
            )
        ]
        report = compute_marginals(records)
        for value in (
            list(report.embedder_results.values())
            + list(report.metric_results.values())
            + list(report.method_results.values())
        ):
            assert value == pytest.approx(0.25)

    def test_marginal_identity(self):
        records = reference_results()
        report = compute_marginals(records)
        overall = np.mean([r.score for r in records])
        assert np.mean(list(report.embedder_results.values())) == pytest.approx(overall, abs=1e-12)
        assert np.mean(list(report.metric_results.values())) == pytest.approx(overall, abs=1e-12)
        assert np.mean(list(report.method_results.values())) == pytest.approx(overall, abs=1e-12)

    def test_incomplete_grid_reports_missing(self):
        records = reference_results()[:-1]
        with pytest.raises(ValueError, match="missing"):
            compute_marginals(records)

    def test_duplicate_cell_rejected(self):
        records = reference_results()
        with pytest.raises(ValueError, match="duplicate"):
            compute_marginals(records + [records[0]])

    def test_rank_identity_on_descending_scores(self):
        records = [
            ResultRecord(embedder=f"e{i}", metric=Metric.COSINE, method="k-means",
                         best_params=None, score=1.0 - i / 10)
            for i in range(5)
        ]
        ranks = rank_embeddings(records)[(Metric.COSINE, "k-means")]
        assert [ranks[f"e{i}"] for i in range(5)] == [1, 2, 3, 4, 5]

    def test_rank_ties_prefer_earlier_embedder(self):
        records = [
            ResultRecord(embedder=e, metric=Metric.COSINE, method="k-means",
                         best_params=None, score=0.5)
            for e in ["e1", "e2"]
        ]
        ranks = rank_embeddings(records)[(Metric.COSINE, "k-means")]
        assert ranks == {"e1": 1, "e2": 2}

    def test_duel_tie_goes_to_euclidean(self):
        records = [
            ResultRecord(embedder="e1", metric=m, method="k-means", best_params=None, score=0.4)
            for m in (Metric.EUCLIDEAN, Metric.COSINE)
        ]
        assert rank_metric_duel(records)[("e1", "k-means")] == 2

    def test_duel_requires_both_metrics(self):
        records = [
            ResultRecord(embedder="e1", metric=Metric.COSINE, method="k-means",
                         best_params=None, score=0.4)
        ]
        with pytest.raises(ValueError):
            rank_metric_duel(records)


class TestFiles:
    def test_experiments_round_trip(self, tmp_path):
        chunk = synthetic.blob_chunk(2, 6, seed=2)
        plan = _plan(chunk, grids={KMEANS: [KMeansParams(2), KMeansParams(3)]})
        _, records = tune(PlanContext(plan), "syn-a", Metric.COSINE, KMEANS)
        path = tmp_path / "exp.tsv"
        write_experiments(records, str(path))
        assert read_experiments(str(path)) == records

    def test_results_round_trip_with_params(self, tmp_path):
        records = [
            ResultRecord(embedder="syn", metric=Metric.COSINE, method=KMEANS,
                         best_params=KMeansParams(3), score=0.625),
            ResultRecord(embedder="syn", metric=Metric.COSINE, method=DBSCAN,
                         best_params=DbscanParams(0.3, 5), score=0.5),
            ResultRecord(embedder="syn", metric=Metric.COSINE, method=JARVIS_PATRICK,
                         best_params=None, score=0.0),
        ]
        path = tmp_path / "res.tsv"
        write_results(records, str(path))
        assert read_results(str(path)) == records

    def test_empty_results_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            write_results([], str(tmp_path / "res.tsv"))

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "res.tsv"
        path.write_text("wrong\n", encoding="utf-8")
        with pytest.raises(FormatError):
            read_results(str(path))

    def test_params_text_round_trip(self):
        for params in (
            KMeansParams(7),
            DbscanParams(0.3, 5),
            OpticsParams(9),
            SpectralParams(4),
        ):
            method = {
                KMeansParams: KMEANS, DbscanParams: DBSCAN,
                OpticsParams: OPTICS, SpectralParams: SPECTRAL,
            }[type(params)]
            assert parse_params(method, format_params(params)) == params
