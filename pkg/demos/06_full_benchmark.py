"""A scaled-down factorial benchmark run: every embedder x metric x method
combination tuned, scored, persisted and aggregated into per-factor means
and rank tables.

The default plan shape is 5 embedders x 2 metrics x 5 methods = 50
combinations; this demo uses 3 synthetic embedders (30 combinations) on a
smaller chunk so it finishes in a few seconds.  Everything is deterministic
given the master seed, and a second run of the same plan produces
byte-identical files.

Run:  python3 demos/06_full_benchmark.py
"""

import tempfile
from pathlib import Path

from topicbench import synthetic
from topicbench.embedding import EmbedderSpec, EmbeddingSources
from topicbench.harness import (
    ExperimentPlan,
    compute_marginals,
    demo_grids,
    rank_embeddings,
    rank_metric_duel,
    run_plan,
)
from topicbench.metricspace import Metric

chunk = synthetic.topic_chunk(n_tweets=200, seed=5)
specs = [
    EmbedderSpec.synthetic("syn-a", dim=32, seed=1),
    EmbedderSpec.synthetic("syn-b", dim=64, seed=2),
    EmbedderSpec.synthetic("syn-c", dim=48, seed=3),
]
plan = ExperimentPlan(
    embedders=specs,
    metrics=[Metric.EUCLIDEAN, Metric.COSINE],
    methods=["k-means", "dbscan", "optics", "spectral", "jarvis-patrick"],
    grids=demo_grids(),
    seed=7,
    chunk=chunk,
    sources=EmbeddingSources(specs),
)

with tempfile.TemporaryDirectory() as tmp:
    results = run_plan(plan, tmp)
    print(f"ran {len(results)} combinations; files: "
          f"{sorted(p.name for p in Path(tmp).iterdir())}")

report = compute_marginals(results)
print("\nper-embedder mean of tuned scores:")
for name, value in sorted(report.embedder_results.items(), key=lambda kv: -kv[1]):
    print(f"  {name:8s} {value:.4f}")
print("per-metric:")
for metric, value in report.metric_results.items():
    print(f"  {metric.value:22s} {value:.4f}")
print("per-method:")
for method, value in sorted(report.method_results.items(), key=lambda kv: -kv[1]):
    print(f"  {method:15s} {value:.4f}")

# ---------------------------------------------------------------------------
# Rank views: embedders ranked within each (metric, method) column, and the
# cosine-vs-euclidean duel per (embedder, method) cell (cosine must strictly
# win to rank 1).

ranks = rank_embeddings(results)
duel = rank_metric_duel(results)
cosine_wins = sum(1 for v in duel.values() if v == 1)
print(f"\ncosine wins {cosine_wins} of {len(duel)} duel cells")
first_col = next(iter(ranks))
print(f"embedder ranks in column {first_col[0].value}/{first_col[1]}: {ranks[first_col]}")
