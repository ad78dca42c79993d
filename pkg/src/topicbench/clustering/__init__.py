from .dbscan import dbscan
from .jarvis_patrick import jarvis_patrick, knn_lists
from .kmeans import kmeans
from .optics import XI, ReachabilityPlot, optics
from .spectral import affinity_from_similarity, spectral, top_eigenpairs
from .types import (
    ALL_METHODS,
    DBSCAN,
    JARVIS_PATRICK,
    KMEANS,
    NOISE,
    OPTICS,
    SPECTRAL,
    ClusterLabeling,
    ClusterParams,
    DbscanParams,
    JarvisPatrickParams,
    KMeansParams,
    OpticsParams,
    SpectralParams,
    compact_labels,
    format_params,
    labeling_from_text,
    labeling_to_text,
    params_key,
    parse_params,
)

__all__ = [
    "ALL_METHODS",
    "DBSCAN",
    "JARVIS_PATRICK",
    "KMEANS",
    "NOISE",
    "OPTICS",
    "SPECTRAL",
    "XI",
    "ClusterLabeling",
    "ClusterParams",
    "DbscanParams",
    "JarvisPatrickParams",
    "KMeansParams",
    "OpticsParams",
    "ReachabilityPlot",
    "SpectralParams",
    "affinity_from_similarity",
    "compact_labels",
    "dbscan",
    "format_params",
    "jarvis_patrick",
    "kmeans",
    "knn_lists",
    "labeling_from_text",
    "labeling_to_text",
    "optics",
    "params_key",
    "parse_params",
    "spectral",
    "top_eigenpairs",
]
