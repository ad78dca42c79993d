"""Analysis of the shipped reference results: per-factor means and both rank
tables, recomputed from the packaged 50-row results file in well under a
second (no models, no clustering runs).

Run:  python3 demos/07_reference_analysis.py
"""

from topicbench.harness import (
    compute_marginals,
    rank_embeddings,
    rank_metric_duel,
    reference_results,
)
from topicbench.metricspace import Metric

records = reference_results()
print(f"loaded {len(records)} reference records")

report = compute_marginals(records)

print("\nembedders, best to worst:")
for name, value in sorted(report.embedder_results.items(), key=lambda kv: -kv[1]):
    print(f"  {name:9s} {value:.6f}")

print("\ndistance metrics:")
for metric, value in report.metric_results.items():
    print(f"  {metric.value:22s} {value:.6f}")

print("\nclustering methods, best to worst:")
for method, value in sorted(report.method_results.items(), key=lambda kv: -kv[1]):
    print(f"  {method:15s} {value:.6f}")

# ---------------------------------------------------------------------------
# Embedder ranks per (metric, method) column.

ranks = rank_embeddings(records)
embedders = list(report.embedder_results)
methods = list(report.method_results)
for metric in (Metric.EUCLIDEAN, Metric.COSINE):
    print(f"\nembedder ranks under {metric.value}:")
    header = "  " + " ".join(f"{m[:10]:>10s}" for m in methods)
    print(header)
    for e in embedders:
        row = " ".join(f"{ranks[(metric, m)][e]:>10d}" for m in methods)
        print(f"  {row}   {e}")

# ---------------------------------------------------------------------------
# The metric duel: 1 means cosine strictly beat normalized Euclidean for
# that embedder/method cell.

duel = rank_metric_duel(records)
wins = sum(1 for v in duel.values() if v == 1)
print(f"\ncosine wins {wins} of {len(duel)} cells")
for e in embedders:
    row = " ".join(str(duel[(e, m)]) for m in methods)
    print(f"  {e:9s} {row}")
