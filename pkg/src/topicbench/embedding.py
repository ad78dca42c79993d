"""Embedding stage: vector file loading, tweet-vector composition, and a
deterministic synthetic embedder used for tests and demos.

Word-level models supply one vector per token (text format below); a tweet
vector is the unweighted mean of its in-vocabulary tokens.  Sentence-level
models supply one pre-pooled vector per tweet id.  The synthetic embedder
derives token vectors from a hash, so the whole benchmark can run without
any model files.

Word-vector text format: first line ``<count> <dim>``, then one line per
token: the token followed by ``dim`` reals, single-space separated.
Sentence-vector format: one line per tweet: ``<tweet-id>\\t<reals space
separated>``.
"""

from __future__ import annotations

import hashlib
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .corpus import Chunk, CleanTweet
from .errors import FormatError

log = logging.getLogger(__name__)

# Published embedding dimensions for the five supported model families.
NAMED_EMBEDDER_DIMS = {
    "word2vec": 400,
    "fasttext": 400,
    "glove": 200,
    "bert": 768,
    "t5": 768,
}
WORD_LEVEL = ("word2vec", "fasttext", "glove")
SENTENCE_LEVEL = ("bert", "t5")


@dataclass(frozen=True)
class EmbedderSpec:
    """Identity of one embedding source.

    ``kind`` is "word-level", "sentence-level" or "synthetic".  For the five
    named model families the dimension is pinned; synthetic embedders may
    use any name, dimension and seed.
    """

    name: str
    kind: str
    dim: int
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in ("word-level", "sentence-level", "synthetic"):
            raise ValueError(f"unknown embedder kind {self.kind!r}")
        if self.dim < 1:
            raise ValueError("dim must be positive")
        expected = NAMED_EMBEDDER_DIMS.get(self.name)
        if expected is not None and self.dim != expected:
            raise ValueError(
                f"{self.name} vectors are {expected}-dimensional, got dim={self.dim}"
            )

    @classmethod
    def named(cls, name: str) -> "EmbedderSpec":
        if name not in NAMED_EMBEDDER_DIMS:
            raise ValueError(f"unknown embedder {name!r}")
        kind = "word-level" if name in WORD_LEVEL else "sentence-level"
        return cls(name=name, kind=kind, dim=NAMED_EMBEDDER_DIMS[name])

    @classmethod
    def synthetic(cls, name: str = "synthetic", dim: int = 64, seed: int = 0) -> "EmbedderSpec":
        return cls(name=name, kind="synthetic", dim=dim, seed=seed)


@dataclass(frozen=True)
class WordVectorTable:
    dim: int
    entries: Mapping[str, np.ndarray]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class EmbeddedChunk:
    chunk_id: int
    embedder: EmbedderSpec
    tweet_ids: tuple[str, ...]
    rows: np.ndarray  # (n_tweets, dim), finite, no zero-norm row

    @property
    def n(self) -> int:
        return self.rows.shape[0]


def load_word_vectors(path: str) -> WordVectorTable:
    """Parse a word-vector file, validating the header against the body."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        parts = header.split()
        if len(parts) != 2:
            raise FormatError("header must be '<count> <dim>'", path=path, line=1)
        try:
            count, dim = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError("header must be '<count> <dim>'", path=path, line=1)
        if count < 0 or dim < 1:
            raise FormatError("header counts out of range", path=path, line=1)

        entries: dict[str, np.ndarray] = {}
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            fields = line.split(" ")
            token = fields[0]
            if not token:
                raise FormatError("empty token", path=path, line=lineno)
            if token != token.lower():
                raise FormatError(f"token {token!r} is not lowercase", path=path, line=lineno)
            if token in entries:
                raise FormatError(f"duplicate token {token!r}", path=path, line=lineno)
            if len(fields) - 1 != dim:
                raise FormatError(
                    f"expected {dim} values, got {len(fields) - 1}", path=path, line=lineno
                )
            try:
                vec = np.array([float(x) for x in fields[1:]], dtype=np.float64)
            except ValueError:
                raise FormatError("unparseable vector value", path=path, line=lineno)
            if not np.all(np.isfinite(vec)):
                raise FormatError("non-finite vector value", path=path, line=lineno)
            entries[token] = vec
    if len(entries) != count:
        raise FormatError(f"header says {count} rows, file has {len(entries)}", path=path)
    return WordVectorTable(dim=dim, entries=entries)


def save_word_vectors(table: WordVectorTable, path: str) -> None:
    """Inverse of ``load_word_vectors``; round-trips bit-identically."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{len(table.entries)} {table.dim}\n")
        for token, vec in table.entries.items():
            fh.write(token + " " + " ".join(repr(float(x)) for x in vec) + "\n")


def load_sentence_vectors(path: str) -> dict[str, np.ndarray]:
    """Parse a sentence-vector file into an id -> vector map."""
    out: dict[str, np.ndarray] = {}
    dim: int | None = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            if "\t" not in line:
                raise FormatError("expected '<id>\\t<values>'", path=path, line=lineno)
            tweet_id, rest = line.split("\t", 1)
            if tweet_id in out:
                raise FormatError(f"duplicate tweet id {tweet_id!r}", path=path, line=lineno)
            try:
                vec = np.array([float(x) for x in rest.split(" ")], dtype=np.float64)
            except ValueError:
                raise FormatError("unparseable vector value", path=path, line=lineno)
            if not np.all(np.isfinite(vec)):
                raise FormatError("non-finite vector value", path=path, line=lineno)
            if dim is None:
                dim = vec.shape[0]
            elif vec.shape[0] != dim:
                raise FormatError(
                    f"ragged dimensions: {vec.shape[0]} != {dim}", path=path, line=lineno
                )
            out[tweet_id] = vec
    if not out:
        log.warning("sentence-vector file %s is empty", path)
    return out


def compose_tweet_vector(t: CleanTweet, table: WordVectorTable) -> np.ndarray | None:
    """Mean of the in-vocabulary token vectors; None if every token is OOV.

    Token multiplicity counts: a token appearing twice contributes twice.
    Mean pooling makes the result independent of token order.
    """
    vecs = [table.entries[w] for w in t.word_tokens if w in table.entries]
    if not vecs:
        return None
    return np.mean(vecs, axis=0)


def _token_seed(token: str, seed: int) -> int:
    digest = hashlib.blake2b(f"{seed}:{token}".encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def synthetic_token_vector(token: str, dim: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(_token_seed(token, seed))
    v = rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def synthetic_embedder(t: CleanTweet, dim: int, seed: int) -> np.ndarray:
    """Deterministic unit-norm tweet vector: hash each token to a seeded unit
    vector, average, renormalize.  Tweets sharing tokens land near each other.
    """
    if dim < 2:
        raise ValueError("dim must be >= 2")
    if not t.word_tokens:
        raise ValueError(f"tweet {t.id!r} has no word tokens to embed")
    mean = np.mean([synthetic_token_vector(w, dim, seed) for w in t.word_tokens], axis=0)
    norm = np.linalg.norm(mean)
    if norm == 0.0 or not math.isfinite(norm):
        # token vectors cancelled exactly; nudge deterministically off zero
        mean = synthetic_token_vector("".join(t.word_tokens), dim, seed)
        norm = np.linalg.norm(mean)
    return mean / norm


class EmbeddingSources:
    """Vector sources for every embedder of a plan, plus the shared
    retained-tweet rule.

    All embedders of one plan must cluster the same tweet set, otherwise the
    per-factor averages compare different point sets.  A tweet is therefore
    excluded for every embedder as soon as it is unusable (all tokens OOV, or
    a zero-norm composed vector) under any word-level embedder of the plan.
    """

    def __init__(
        self,
        specs: Iterable[EmbedderSpec],
        word_tables: Mapping[str, WordVectorTable] | None = None,
        sentence_maps: Mapping[str, Mapping[str, np.ndarray]] | None = None,
    ):
        self.specs = list(specs)
        self.word_tables = dict(word_tables or {})
        self.sentence_maps = dict(sentence_maps or {})
        for spec in self.specs:
            if spec.kind == "word-level" and spec.name not in self.word_tables:
                raise ValueError(f"no word-vector table supplied for {spec.name!r}")
            if spec.kind == "sentence-level" and spec.name not in self.sentence_maps:
                raise ValueError(f"no sentence-vector map supplied for {spec.name!r}")
            if spec.kind == "word-level":
                table = self.word_tables[spec.name]
                if table.dim != spec.dim:
                    raise ValueError(
                        f"{spec.name}: table dim {table.dim} != spec dim {spec.dim}"
                    )
        self._retained_cache: dict[int, tuple[str, ...]] = {}

    def _usable(self, tweet: CleanTweet, spec: EmbedderSpec) -> bool:
        if spec.kind == "word-level":
            vec = compose_tweet_vector(tweet, self.word_tables[spec.name])
            return vec is not None and np.linalg.norm(vec) > 0.0
        if spec.kind == "sentence-level":
            # a missing id is an error surfaced at embed time, not an exclusion
            vec = self.sentence_maps[spec.name].get(tweet.id)
            return vec is None or np.linalg.norm(vec) > 0.0
        return True

    def retained_ids(self, chunk: Chunk) -> tuple[str, ...]:
        """Tweet ids of ``chunk`` usable under every embedder, in chunk order."""
        cached = self._retained_cache.get(chunk.chunk_id)
        if cached is not None:
            return cached
        retained = tuple(
            t.id for t in chunk.tweets if all(self._usable(t, s) for s in self.specs)
        )
        dropped = len(chunk.tweets) - len(retained)
        if dropped:
            log.info(
                "chunk %d: %d tweet(s) excluded as out-of-vocabulary for some embedder",
                chunk.chunk_id,
                dropped,
            )
        self._retained_cache[chunk.chunk_id] = retained
        return retained


def embed_chunk(chunk: Chunk, spec: EmbedderSpec, sources: EmbeddingSources) -> EmbeddedChunk:
    """Embed every retained tweet of ``chunk`` under ``spec``.

    Rows align with ``sources.retained_ids(chunk)``, so every embedder of the
    plan produces rows for exactly the same tweets.
    """
    retained = sources.retained_ids(chunk)
    by_id = {t.id: t for t in chunk.tweets}
    rows = np.empty((len(retained), spec.dim), dtype=np.float64)
    for i, tweet_id in enumerate(retained):
        tweet = by_id[tweet_id]
        if spec.kind == "synthetic":
            rows[i] = synthetic_embedder(tweet, spec.dim, spec.seed or 0)
        elif spec.kind == "word-level":
            vec = compose_tweet_vector(tweet, sources.word_tables[spec.name])
            if vec is None:  # retained_ids already excluded these
                raise ValueError(f"tweet {tweet_id!r} unexpectedly out of vocabulary")
            rows[i] = vec
        else:
            sent_map = sources.sentence_maps[spec.name]
            if tweet_id not in sent_map:
                raise ValueError(
                    f"sentence-vector map for {spec.name!r} is missing tweet {tweet_id!r}"
                )
            vec = sent_map[tweet_id]
            if vec.shape[0] != spec.dim:
                raise ValueError(
                    f"{spec.name}: sentence vector dim {vec.shape[0]} != spec dim {spec.dim}"
                )
            rows[i] = vec
    if rows.size and not np.all(np.isfinite(rows)):
        raise ValueError("embedded rows contain non-finite values")
    if rows.size and np.any(np.linalg.norm(rows, axis=1) == 0.0):
        raise ValueError("embedded rows contain a zero-norm vector")
    return EmbeddedChunk(
        chunk_id=chunk.chunk_id, embedder=spec, tweet_ids=retained, rows=rows
    )
