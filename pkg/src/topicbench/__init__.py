"""topicbench: a benchmark harness for semantic tweet clustering.

Pipeline: preprocess a tweet stream into chunks, embed each chunk with one
or more embedders, build pairwise distance matrices (normalized Euclidean or
cosine), run five clustering methods over them, score every run with the
silhouette coefficient, tune each method over a parameter grid, and compare
embedders / metrics / methods by averaging the tuned scores per factor.
"""

__version__ = "0.1.0"

from . import clustering, corpus, embedding, evaluation, harness, metricspace, reporting
from .errors import (
    DegenerateChunkError,
    DisconnectedPointError,
    EmptyEvaluationError,
    FormatError,
    TopicbenchError,
)

__all__ = [
    "DegenerateChunkError",
    "DisconnectedPointError",
    "EmptyEvaluationError",
    "FormatError",
    "TopicbenchError",
    "__version__",
    "clustering",
    "corpus",
    "embedding",
    "evaluation",
    "harness",
    "metricspace",
    "reporting",
]
