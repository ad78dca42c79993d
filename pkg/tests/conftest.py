import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for the oracles helper module

from topicbench.corpus import Chunk, CleanTweet, load_stopwords
from topicbench.embedding import EmbeddedChunk, EmbedderSpec
from topicbench.metricspace import DistanceMatrix, Metric


@pytest.fixture(scope="session")
def stopwords():
    return load_stopwords()


def make_chunk(token_lists, chunk_id=0):
    tweets = tuple(
        CleanTweet(id=f"t{i}", word_tokens=tuple(tokens), original_text=" ".join(tokens))
        for i, tokens in enumerate(token_lists)
    )
    return Chunk(chunk_id=chunk_id, tweets=tweets)


def embedded_from_rows(rows, name="test", chunk_id=0):
    rows = np.asarray(rows, dtype=np.float64)
    spec = EmbedderSpec.synthetic(name=name, dim=rows.shape[1], seed=0)
    ids = tuple(f"t{i}" for i in range(rows.shape[0]))
    return EmbeddedChunk(chunk_id=chunk_id, embedder=spec, tweet_ids=ids, rows=rows)


def matrix_from_values(values, metric=Metric.EUCLIDEAN):
    d = np.asarray(values, dtype=np.float64)
    return DistanceMatrix(n=d.shape[0], metric=metric, d=d)


def random_distance_matrix(rng, n, metric=Metric.EUCLIDEAN, dim=3, scale=1.0):
    """Distance matrix of random points (raw Euclidean, then normalized by
    the max pair like the production builder)."""
    pts = rng.uniform(-scale, scale, size=(n, dim))
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d[i, j] = d[j, i] = float(np.linalg.norm(pts[i] - pts[j]))
    m = d.max()
    if m > 0:
        d /= m
    return matrix_from_values(d, metric)
