"""Distance metrics and pairwise distance/similarity matrices.

Two metrics are supported over embedded tweet vectors:

* ``euclidean-normalized``: raw Euclidean distances divided by the largest
  pairwise distance of the chunk, so entries land in [0, 1] and the maximum
  is exactly 1.  The normalization is chunk-relative, which means silhouette
  values computed from it are NOT comparable across chunks.
* ``cosine``: 1 minus cosine similarity, entries in [0, 2].

Similarity is ``1 - distance`` elementwise for both metrics.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .embedding import EmbeddedChunk
from .errors import DegenerateChunkError, FormatError


class Metric(str, Enum):
    EUCLIDEAN = "euclidean-normalized"
    COSINE = "cosine"

    @classmethod
    def parse(cls, token: str) -> "Metric":
        token = token.strip().lower()
        if token in ("euclidean", "euclidean-normalized", "euclidian"):
            return cls.EUCLIDEAN
        if token == "cosine":
            return cls.COSINE
        raise ValueError(f"unknown metric {token!r}")


@dataclass(frozen=True)
class DistanceMatrix:
    n: int
    metric: Metric
    d: np.ndarray  # (n, n) symmetric, zero diagonal


@dataclass(frozen=True)
class SimilarityMatrix:
    n: int
    metric: Metric
    s: np.ndarray  # 1 - d elementwise


def euclidean_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Raw (unnormalized) Euclidean distance between two vectors."""
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.sqrt(np.sum((a - b) ** 2)))


def cosine_distance(a: np.ndarray, b: np.ndarray) -> float:
    """1 - cosine similarity; undefined (raises) for zero-norm input."""
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise ValueError("cosine distance is undefined for zero-norm vectors")
    return float(1.0 - np.dot(a, b) / (na * nb))


def build_distance_matrix(e: EmbeddedChunk, metric: Metric) -> DistanceMatrix:
    """Pairwise distances over a chunk's rows.

    Entries are computed once per unordered pair and mirrored, so the matrix
    is exactly symmetric with an exactly zero diagonal.  A chunk whose points
    all coincide has no max distance to normalize by and is rejected.
    """
    rows = np.asarray(e.rows, dtype=np.float64)
    n = rows.shape[0]
    if n < 2:
        raise ValueError("need at least 2 points to build a distance matrix")
    d = np.zeros((n, n), dtype=np.float64)

    if metric is Metric.EUCLIDEAN:
        for i in range(n - 1):
            diff = rows[i + 1 :] - rows[i]
            d[i, i + 1 :] = np.sqrt(np.sum(diff * diff, axis=1))
        d += d.T
        dmax = d.max()
        if dmax == 0.0:
            raise DegenerateChunkError(
                "all points of the chunk coincide; normalized Euclidean is undefined"
            )
        d /= dmax
    else:
        norms = np.linalg.norm(rows, axis=1)
        if np.any(norms == 0.0):
            raise ValueError("cosine distance is undefined for zero-norm vectors")
        unit = rows / norms[:, None]
        for i in range(n - 1):
            sims = unit[i + 1 :] @ unit[i]
            d[i, i + 1 :] = 1.0 - sims
        d += d.T
        np.clip(d, 0.0, 2.0, out=d)  # guard fp drift just outside [0, 2]
        np.fill_diagonal(d, 0.0)
    return DistanceMatrix(n=n, metric=metric, d=d)


def to_similarity(dm: DistanceMatrix) -> SimilarityMatrix:
    """Elementwise 1 - distance (diagonal becomes exactly 1)."""
    return SimilarityMatrix(n=dm.n, metric=dm.metric, s=1.0 - dm.d)


# Optional text dump, used by test oracles: first line "n metric", then n
# rows of n reals.


def dump_distance_matrix(dm: DistanceMatrix, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{dm.n} {dm.metric.value}\n")
        for row in dm.d:
            fh.write(" ".join(repr(float(x)) for x in row) + "\n")


def load_distance_matrix(path: str) -> DistanceMatrix:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise FormatError("header must be '<n> <metric>'", path=path, line=1)
        try:
            n = int(header[0])
            metric = Metric.parse(header[1])
        except ValueError as e:
            raise FormatError(str(e), path=path, line=1) from e
        d = np.empty((n, n), dtype=np.float64)
        for i in range(n):
            line = fh.readline()
            if not line:
                raise FormatError(f"expected {n} rows", path=path, line=2 + i)
            vals = line.split()
            if len(vals) != n:
                raise FormatError(f"expected {n} values per row", path=path, line=2 + i)
            d[i] = [float(x) for x in vals]
    return DistanceMatrix(n=n, metric=metric, d=d)
