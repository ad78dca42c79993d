"""Synthetic tweet generators for demos and tests.

Combined with the synthetic embedder these let the whole factorial harness
run without any model files: tweets built from disjoint per-topic
vocabularies embed into well-separated blobs, because the synthetic embedder
averages hashed token vectors.
"""

from __future__ import annotations

import numpy as np

from .corpus import Chunk, CleanTweet, RawTweet

_TOPIC_WORDS = {
    "vaccines": ["vaccine", "dose", "trial", "immunity", "booster", "efficacy", "jab"],
    "economy": ["economy", "jobs", "market", "recession", "stimulus", "trade", "prices"],
    "symptoms": ["fever", "cough", "fatigue", "symptom", "taste", "smell", "breathing"],
    "travel": ["travel", "flight", "border", "quarantine", "tourism", "airport", "visa"],
    "schools": ["school", "students", "remote", "classroom", "teachers", "exams", "campus"],
}


def blob_chunk(
    n_blobs: int = 3,
    per_blob: int = 25,
    seed: int = 0,
    base_tokens: int = 8,
    tokens_per_tweet: int = 8,
    chunk_id: int = 0,
) -> Chunk:
    """A chunk whose tweets form ``n_blobs`` groups with disjoint vocabularies.

    Tweets inside one blob draw most of their tokens from the blob's shared
    base vocabulary (plus one tweet-unique token), so any two of them share
    well over half their tokens and embed close together; tweets of different
    blobs share nothing.
    """
    rng = np.random.default_rng(seed)
    tweets: list[CleanTweet] = []
    for b in range(n_blobs):
        base = [f"topic{b}word{j}" for j in range(base_tokens)]
        for i in range(per_blob):
            picked = list(rng.choice(base, size=min(tokens_per_tweet, base_tokens), replace=False))
            picked.append(f"topic{b}tweet{i}")
            tweets.append(
                CleanTweet(
                    id=f"b{b}t{i}",
                    word_tokens=tuple(picked),
                    original_text=" ".join(picked),
                )
            )
    return Chunk(chunk_id=chunk_id, tweets=tuple(tweets))


def topic_chunk(n_tweets: int = 500, seed: int = 0, chunk_id: int = 0) -> Chunk:
    """A mixed-topic chunk: each tweet samples 4-8 words from one of five
    topical vocabularies, yielding loose but recoverable cluster structure."""
    rng = np.random.default_rng(seed)
    topics = list(_TOPIC_WORDS)
    tweets: list[CleanTweet] = []
    for i in range(n_tweets):
        topic = topics[int(rng.integers(len(topics)))]
        vocab = _TOPIC_WORDS[topic]
        count = int(rng.integers(4, 9))
        words = [vocab[int(rng.integers(len(vocab)))] for _ in range(count)]
        tweets.append(
            CleanTweet(
                id=f"s{i}",
                word_tokens=tuple(words),
                original_text=" ".join(words),
            )
        )
    return Chunk(chunk_id=chunk_id, tweets=tuple(tweets))


def raw_tweet_stream(n_tweets: int = 1000, seed: int = 0) -> list[RawTweet]:
    """Raw tweets with hashtags, mentions, urls and the occasional short or
    non-English entry, for exercising the preprocessing stage end to end."""
    rng = np.random.default_rng(seed)
    topics = list(_TOPIC_WORDS)
    out: list[RawTweet] = []
    for i in range(n_tweets):
        roll = rng.random()
        if roll < 0.05:
            out.append(RawTweet(id=f"r{i}", text="so true !!", lang="en"))
            continue
        if roll < 0.10:
            out.append(RawTweet(id=f"r{i}", text="la situación es muy grave hoy aquí", lang="es"))
            continue
        topic = topics[int(rng.integers(len(topics)))]
        vocab = _TOPIC_WORDS[topic]
        count = int(rng.integers(5, 10))
        words = [vocab[int(rng.integers(len(vocab)))] for _ in range(count)]
        text = " ".join(words)
        if rng.random() < 0.4:
            text += f" #{topic}"
        if rng.random() < 0.2:
            text += " @newsdesk"
        if rng.random() < 0.2:
            text += f" https://t.co/{i:x}"
        out.append(RawTweet(id=f"r{i}", text=text, lang="en"))
    return out
