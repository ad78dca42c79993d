"""Parameter tuning: evaluate a whole grid for one combination, keep the
best silhouette, and emit the sweep-curve / heat-grid data the plots are
made from.

Run:  python3 demos/05_parameter_tuning.py
"""

import tempfile
from pathlib import Path

from topicbench import synthetic
from topicbench.clustering import JARVIS_PATRICK, KMEANS, JarvisPatrickParams, KMeansParams
from topicbench.embedding import EmbedderSpec, EmbeddingSources
from topicbench.harness import ExperimentPlan, PlanContext, tune
from topicbench.metricspace import Metric
from topicbench.reporting import emit_heatgrid, emit_sweep

chunk = synthetic.blob_chunk(n_blobs=3, per_blob=15, seed=2)
spec = EmbedderSpec.synthetic("demo", dim=64, seed=1)
plan = ExperimentPlan(
    embedders=[spec],
    metrics=[Metric.COSINE],
    methods=[KMEANS, JARVIS_PATRICK],
    grids={
        KMEANS: [KMeansParams(k) for k in range(2, 10)],
        JARVIS_PATRICK: [
            JarvisPatrickParams(k, t) for k in (10, 12, 14) for t in range(1, k + 1)
        ],
    },
    seed=42,
    chunk=chunk,
    sources=EmbeddingSources([spec]),
)
ctx = PlanContext(plan)

# ---------------------------------------------------------------------------
# Single-parameter method: the tuned score is the max over the sweep, ties
# resolving to the smaller parameter.

result, records = tune(ctx, "demo", Metric.COSINE, KMEANS)
print("k-means sweep:")
for r in records:
    marker = "  <- best" if r.params == result.best_params else ""
    print(f"  k={r.params.k}: {r.score:.4f}{marker}")

# ---------------------------------------------------------------------------
# Two-parameter method: the same, over (k, k_t) pairs; the emitted heat grid
# holds one cell per pair (k_t <= k).

jp_result, jp_records = tune(ctx, "demo", Metric.COSINE, JARVIS_PATRICK)
print(f"\njarvis-patrick best: {jp_result.best_params} -> {jp_result.score:.4f}")

with tempfile.TemporaryDirectory() as tmp:
    sweep_path = Path(tmp) / "kmeans_sweep.tsv"
    heat_path = Path(tmp) / "jp_heatgrid.tsv"
    emit_sweep(records, str(sweep_path))
    grid = emit_heatgrid(jp_records, str(heat_path))
    print(f"\nsweep file rows: {len(sweep_path.read_text().splitlines())}")
    print(f"heat grid cells: {len(grid.cells)} (k values {grid.ks})")
    print("first heat-grid lines:")
    for line in heat_path.read_text().splitlines()[:4]:
        print(" ", line)
