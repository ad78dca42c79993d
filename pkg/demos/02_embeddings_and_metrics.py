"""Embedding and distance-metric walkthrough.

Word-level models supply one vector per token and a tweet becomes the mean
of its in-vocabulary tokens; the deterministic synthetic embedder (hashed
token vectors) lets everything run without model files.  Distances come in
two flavors: chunk-normalized Euclidean (entries in [0, 1], max exactly 1)
and cosine (entries in [0, 2]).

Run:  python3 demos/02_embeddings_and_metrics.py
"""

import numpy as np

from topicbench import synthetic
from topicbench.embedding import (
    EmbedderSpec,
    EmbeddingSources,
    compose_tweet_vector,
    embed_chunk,
    synthetic_embedder,
)
from topicbench.corpus import CleanTweet
from topicbench.embedding import WordVectorTable
from topicbench.metricspace import Metric, build_distance_matrix, to_similarity

# ---------------------------------------------------------------------------
# Mean pooling over a tiny word-vector table.

table = WordVectorTable(
    dim=2,
    entries={
        "vaccine": np.array([1.0, 0.0]),
        "trial": np.array([0.0, 1.0]),
    },
)
tweet = CleanTweet(id="x", word_tokens=("vaccine", "trial"), original_text="")
print("mean-pooled tweet vector:", compose_tweet_vector(tweet, table))

# ---------------------------------------------------------------------------
# The synthetic embedder is deterministic and unit-norm; tweets sharing
# tokens land near each other.

a = synthetic_embedder(CleanTweet("a", ("virus", "spread", "fast"), ""), dim=32, seed=0)
b = synthetic_embedder(CleanTweet("b", ("virus", "spread", "slow"), ""), dim=32, seed=0)
c = synthetic_embedder(CleanTweet("c", ("economy", "jobs", "market"), ""), dim=32, seed=0)
print(f"similarity same-topic: {float(a @ b):.3f}   cross-topic: {float(a @ c):.3f}")

# ---------------------------------------------------------------------------
# A whole chunk at once.  Every embedder of a plan embeds exactly the same
# retained tweets, so factor comparisons stay apples-to-apples.

chunk = synthetic.blob_chunk(n_blobs=2, per_blob=4, seed=1)
spec = EmbedderSpec.synthetic("demo", dim=32, seed=7)
embedded = embed_chunk(chunk, spec, EmbeddingSources([spec]))
print("\nembedded chunk:", embedded.rows.shape)

for metric in (Metric.EUCLIDEAN, Metric.COSINE):
    dm = build_distance_matrix(embedded, metric)
    print(f"\n{metric.value}: max={dm.d.max():.3f} symmetric={np.array_equal(dm.d, dm.d.T)}")
    print(np.round(dm.d[:4, :4], 3))

sm = to_similarity(build_distance_matrix(embedded, Metric.COSINE))
print("\nsimilarity = 1 - distance; diagonal:", np.unique(np.diag(sm.s)))
