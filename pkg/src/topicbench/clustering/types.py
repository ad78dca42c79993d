"""Shared clustering types: labelings, per-method parameter records, and the
text serialization used by the result files."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from ..errors import FormatError

NOISE = -1

KMEANS = "k-means"
DBSCAN = "dbscan"
OPTICS = "optics"
SPECTRAL = "spectral"
JARVIS_PATRICK = "jarvis-patrick"
ALL_METHODS = (KMEANS, DBSCAN, OPTICS, SPECTRAL, JARVIS_PATRICK)


@dataclass(frozen=True)
class KMeansParams:
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be >= 2")


@dataclass(frozen=True)
class DbscanParams:
    eps: float
    min_pts: int

    def __post_init__(self):
        if self.eps <= 0:
            raise ValueError("eps must be > 0")
        if self.min_pts < 2:
            raise ValueError("min_pts must be >= 2")


@dataclass(frozen=True)
class OpticsParams:
    min_pts: int

    def __post_init__(self):
        if self.min_pts < 2:
            raise ValueError("min_pts must be >= 2")


@dataclass(frozen=True)
class SpectralParams:
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be >= 2")


@dataclass(frozen=True)
class JarvisPatrickParams:
    k: int
    k_t: int

    def __post_init__(self):
        if not (1 <= self.k_t <= self.k):
            raise ValueError("need 1 <= k_t <= k")


ClusterParams = Union[
    KMeansParams, DbscanParams, OpticsParams, SpectralParams, JarvisPatrickParams
]

_PARAM_FIELDS = {
    KMeansParams: ("k",),
    DbscanParams: ("eps", "min_pts"),
    OpticsParams: ("min_pts",),
    SpectralParams: ("k",),
    JarvisPatrickParams: ("k", "k_t"),
}
_METHOD_PARAMS = {
    KMEANS: KMeansParams,
    DBSCAN: DbscanParams,
    OPTICS: OpticsParams,
    SPECTRAL: SpectralParams,
    JARVIS_PATRICK: JarvisPatrickParams,
}


def params_key(params: ClusterParams) -> tuple:
    """Sort key: single-parameter methods by value, pairs lexicographically.

    Used for the "smallest parameter wins" tie-break when tuning.
    """
    return tuple(getattr(params, f) for f in _PARAM_FIELDS[type(params)])


def format_params(params: ClusterParams | None) -> str:
    if params is None:
        return "-"
    fields = _PARAM_FIELDS[type(params)]
    parts = []
    for f in fields:
        v = getattr(params, f)
        parts.append(f"{f}={repr(float(v)) if isinstance(v, float) else v}")
    return ",".join(parts)


def parse_params(method: str, text: str) -> ClusterParams | None:
    if text == "-":
        return None
    cls = _METHOD_PARAMS.get(method)
    if cls is None:
        raise FormatError(f"unknown clustering method {method!r}")
    kwargs = {}
    try:
        for part in text.split(","):
            name, value = part.split("=", 1)
            kwargs[name] = float(value) if name == "eps" else int(value)
        return cls(**kwargs)
    except (ValueError, TypeError) as e:
        raise FormatError(f"bad parameters {text!r} for {method}: {e}") from e


@dataclass
class ClusterLabeling:
    """Per-point cluster assignment.

    ``labels[i]`` is a cluster index in 0..k-1 or NOISE (-1).  Every index
    below ``k`` is used by at least one point.  ``objective_history`` is
    populated by k-means only (one value per Lloyd iteration).
    """

    labels: np.ndarray
    k: int
    method: str
    params: ClusterParams | None
    seed: int | None = None
    objective_history: list[float] = field(default_factory=list)

    def __post_init__(self):
        self.labels = np.asarray(self.labels, dtype=np.int64)
        used = set(int(x) for x in self.labels)
        used.discard(NOISE)
        if used != set(range(self.k)):
            raise ValueError(
                f"labels use cluster ids {sorted(used)} but k={self.k}; "
                "ids must be exactly 0..k-1"
            )

    @property
    def n(self) -> int:
        return int(self.labels.shape[0])


def compact_labels(raw: np.ndarray) -> tuple[np.ndarray, int]:
    """Renumber cluster ids to 0..k-1 in order of first appearance,
    leaving NOISE (-1) untouched."""
    raw = np.asarray(raw, dtype=np.int64)
    mapping: dict[int, int] = {}
    out = np.full(raw.shape, NOISE, dtype=np.int64)
    for i, v in enumerate(raw):
        v = int(v)
        if v == NOISE:
            continue
        if v not in mapping:
            mapping[v] = len(mapping)
        out[i] = mapping[v]
    return out, len(mapping)


def labeling_to_text(labeling: ClusterLabeling) -> str:
    """Serialize: header naming method/params/seed, then one line per point
    '<point-index> <cluster-id|NOISE>'."""
    seed = "-" if labeling.seed is None else str(labeling.seed)
    lines = [f"# method={labeling.method} params={format_params(labeling.params)} seed={seed}"]
    for i, v in enumerate(labeling.labels):
        lines.append(f"{i} {'NOISE' if v == NOISE else int(v)}")
    return "\n".join(lines) + "\n"


def labeling_from_text(text: str) -> ClusterLabeling:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise FormatError("labeling text must start with a '# method=...' header")
    header = dict(
        part.split("=", 1) for part in lines[0].lstrip("# ").split(" ") if "=" in part
    )
    method = header.get("method", "")
    params = parse_params(method, header.get("params", "-"))
    seed_text = header.get("seed", "-")
    seed = None if seed_text == "-" else int(seed_text)
    labels = np.full(len(lines) - 1, NOISE, dtype=np.int64)
    for ln in lines[1:]:
        idx_text, val = ln.split()
        labels[int(idx_text)] = NOISE if val == "NOISE" else int(val)
    k = int(labels.max()) + 1 if labels.size and labels.max() >= 0 else 0
    return ClusterLabeling(labels=labels, k=k, method=method, params=params, seed=seed)
