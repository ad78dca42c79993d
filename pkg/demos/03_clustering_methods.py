"""The five clustering methods side by side on one synthetic chunk.

k-means consumes the vectors (spherical variant under cosine); the density
methods and the shared-neighbor method consume the precomputed distance
matrix; spectral consumes the similarity matrix.  Every run is scored with
the silhouette over the same distance matrix it clustered.

Run:  python3 demos/03_clustering_methods.py
"""

import numpy as np

from topicbench import synthetic
from topicbench.clustering import dbscan, jarvis_patrick, kmeans, optics, spectral
from topicbench.embedding import EmbedderSpec, EmbeddingSources, embed_chunk
from topicbench.evaluation import silhouette_score
from topicbench.metricspace import Metric, build_distance_matrix, to_similarity
from topicbench.reporting import noise_count

chunk = synthetic.blob_chunk(n_blobs=3, per_blob=15, seed=11)
spec = EmbedderSpec.synthetic("demo", dim=64, seed=3)
embedded = embed_chunk(chunk, spec, EmbeddingSources([spec]))
dm = build_distance_matrix(embedded, Metric.COSINE)

runs = {
    "k-means (k=3)": kmeans(embedded.rows, Metric.COSINE, k=3, seed=0),
    "dbscan (eps=0.2, min_pts=3)": dbscan(dm, eps=0.2, min_pts=3),
    "optics (min_pts=4)": optics(dm, min_pts=4)[1],
    "spectral (k=3)": spectral(to_similarity(dm), k=3, seed=0),
    "jarvis-patrick (k=10, k_t=2)": jarvis_patrick(dm, k=10, k_t=2),
}

print(f"{'method':30s} {'clusters':>8s} {'noise':>6s} {'silhouette':>11s}")
for name, labeling in runs.items():
    score = silhouette_score(labeling, dm)
    print(f"{name:30s} {labeling.k:8d} {noise_count(labeling):6d} {score:11.4f}")

# ---------------------------------------------------------------------------
# The reachability plot behind the optics run: within-blob reachabilities
# stay low, and each jump to a new blob shows up as a spike.

plot, _ = optics(dm, min_pts=4)
ordered = plot.ordered_reachability()
print("\nreachability plot (ordered):")
print(np.array2string(np.round(ordered, 3), max_line_width=78))
