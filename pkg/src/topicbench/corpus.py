"""Tweet preprocessing: tokenization, cleanup, filtering and chunking.

The input is a stream of raw tweets (newline-delimited JSON, one object per
line, see ``read_tweets``).  Each tweet is tokenized and tagged, reduced to
its lowercase content words, filtered by length and language, and the
survivors are grouped into fixed-size chunks that downstream stages treat as
independent clustering units.
"""

from __future__ import annotations

import json
import logging
import re
import unicodedata
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from typing import Iterable, Iterator, TextIO

from .errors import FormatError

log = logging.getLogger(__name__)

DEFAULT_MIN_WORDS = 4
DEFAULT_CHUNK_SIZE = 500

STOPWORDS_RESOURCE = "stopwords_en_v1.txt"


class Tag(str, Enum):
    WORD = "word"
    NUMBER = "number"
    PUNCT = "punct"
    EMOJI = "emoji"
    HASHTAG = "hashtag"
    URL = "url"
    MENTION = "mention"
    OTHER = "other"


@dataclass(frozen=True)
class Token:
    surface: str
    tag: Tag
    lang: str | None = None  # set only for Tag.WORD


@dataclass(frozen=True)
class RawTweet:
    id: str
    text: str
    lang: str | None = None
    created_at: str | None = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("tweet id must be non-empty")


@dataclass(frozen=True)
class CleanTweet:
    id: str
    word_tokens: tuple[str, ...]
    original_text: str
    lang: str | None = None  # carried over from the raw tweet metadata


@dataclass(frozen=True)
class Chunk:
    chunk_id: int
    tweets: tuple[CleanTweet, ...]


class LanguagePolicy(str, Enum):
    """How non-English tweets are detected for removal.

    METADATA uses the tweet's ``lang`` field when present and falls back to
    the script heuristic otherwise; HEURISTIC always uses the heuristic
    (keep iff at least 80% of word tokens are Latin-script); OFF never drops
    for language.
    """

    METADATA = "metadata"
    HEURISTIC = "heuristic"
    OFF = "off"


# Tagging rules.  Alternatives are tried in this order at each position;
# anything unmatched falls through to single-codepoint classification.
_URL_RE = r"https?://\S+"
_MENTION_RE = r"@\w+"
_HASHTAG_RE = r"#\w+"
_NUMBER_RE = r"\d+(?:[.,-]\d+)*"
_WORD_RE = r"[^\W\d_]+(?:['’][^\W\d_]+)*"

_MASTER_RE = re.compile(
    f"(?P<url>{_URL_RE})"
    f"|(?P<mention>{_MENTION_RE})"
    f"|(?P<hashtag>{_HASHTAG_RE})"
    f"|(?P<number>{_NUMBER_RE})"
    f"|(?P<word>{_WORD_RE})",
    re.UNICODE,
)

_EMOJI_RANGES = (
    (0x1F300, 0x1F5FF),
    (0x1F600, 0x1F64F),
    (0x1F680, 0x1F6FF),
    (0x1F700, 0x1F77F),
    (0x1F900, 0x1F9FF),
    (0x1FA00, 0x1FAFF),
    (0x2600, 0x26FF),
    (0x2700, 0x27BF),
    (0xFE00, 0xFE0F),  # variation selectors riding on emoji
)

# First-letter script ranges -> candidate language code.  Latin maps to an
# English candidate; anything unrecognized is tagged "und".
_SCRIPT_LANGS = (
    ((0x0041, 0x024F), "en"),
    ((0x1E00, 0x1EFF), "en"),
    ((0x0370, 0x03FF), "el"),
    ((0x0400, 0x04FF), "ru"),
    ((0x0590, 0x05FF), "he"),
    ((0x0600, 0x077F), "ar"),
    ((0x0900, 0x097F), "hi"),
    ((0x3040, 0x30FF), "ja"),
    ((0x4E00, 0x9FFF), "zh"),
    ((0xAC00, 0xD7AF), "ko"),
)


def _is_emoji(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _EMOJI_RANGES)


def _word_lang(surface: str) -> str:
    cp = ord(surface[0])
    for (lo, hi), code in _SCRIPT_LANGS:
        if lo <= cp <= hi:
            return code
    return "und"


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tagged tokens.

    Whitespace separates tokens and is discarded; every non-whitespace
    character ends up in exactly one token.  Unknown characters are tagged
    OTHER rather than rejected.
    """
    tokens: list[Token] = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        m = _MASTER_RE.match(text, pos)
        if m is not None:
            kind = m.lastgroup
            surface = m.group()
            if kind == "word":
                tokens.append(Token(surface, Tag.WORD, _word_lang(surface)))
            else:
                tokens.append(Token(surface, Tag(kind)))
            pos = m.end()
            continue
        # single-codepoint fallback
        if _is_emoji(ch):
            tokens.append(Token(ch, Tag.EMOJI))
        elif unicodedata.category(ch).startswith("P"):
            tokens.append(Token(ch, Tag.PUNCT))
        else:
            tokens.append(Token(ch, Tag.OTHER))
        pos += 1
    return tokens


def normalize_tokens(tokens: Iterable[Token], stopwords: frozenset[str]) -> list[str]:
    """Lowercase the WORD tokens and drop stopwords, preserving order."""
    out = []
    for t in tokens:
        if t.tag is not Tag.WORD:
            continue
        low = t.surface.lower()
        if low not in stopwords:
            out.append(low)
    return out


def load_stopwords(source: str | TextIO | None = None) -> frozenset[str]:
    """Load a stopword list (one lowercase word per line, '#' comments).

    With no argument the list shipped with the package is used; runs are
    reproducible against that pinned fixture.
    """
    if source is None:
        text = (
            resources.files("topicbench.data").joinpath(STOPWORDS_RESOURCE).read_text("utf-8")
        )
    elif isinstance(source, str):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = source.read()
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line != line.lower():
            raise FormatError(f"stopword {line!r} is not lowercase")
        words.add(line)
    return frozenset(words)


def clean_tweet(raw: RawTweet, stopwords: frozenset[str]) -> CleanTweet:
    """Tokenize and normalize one raw tweet."""
    words = normalize_tokens(tokenize(raw.text), stopwords)
    return CleanTweet(
        id=raw.id,
        word_tokens=tuple(words),
        original_text=raw.text,
        lang=raw.lang,
    )


def _latin_fraction(word_tokens: tuple[str, ...]) -> float:
    if not word_tokens:
        return 0.0
    latin = sum(1 for w in word_tokens if _word_lang(w) == "en")
    return latin / len(word_tokens)


def filter_tweet(
    t: CleanTweet,
    min_words: int = DEFAULT_MIN_WORDS,
    lang_policy: LanguagePolicy = LanguagePolicy.METADATA,
) -> str | None:
    """Decide whether to keep a cleaned tweet.

    Returns None to keep, or a drop reason ("too_short" / "language").
    The decision depends only on the tweet and the policy.
    """
    if len(t.word_tokens) < min_words:
        return "too_short"
    if lang_policy is LanguagePolicy.OFF:
        return None
    if lang_policy is LanguagePolicy.METADATA and t.lang is not None:
        return None if t.lang.lower().startswith("en") else "language"
    # heuristic fallback: keep iff >= 80% of word tokens are Latin script
    return None if _latin_fraction(t.word_tokens) >= 0.8 else "language"


@dataclass
class DropLog:
    """Record of tweets removed during preprocessing, with reasons."""

    dropped: list[tuple[str, str]] = field(default_factory=list)

    def add(self, tweet_id: str, reason: str) -> None:
        self.dropped.append((tweet_id, reason))

    def __len__(self) -> int:
        return len(self.dropped)


def chunk_stream(
    tweets: Iterable[RawTweet],
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    *,
    min_words: int = DEFAULT_MIN_WORDS,
    stopwords: frozenset[str] | None = None,
    lang_policy: LanguagePolicy = LanguagePolicy.METADATA,
    drop_log: DropLog | None = None,
) -> Iterator[Chunk]:
    """Clean, filter and group a tweet stream into chunks of ``chunk_size``.

    Survivors keep their arrival order; every emitted chunk is full except
    possibly the last.  Duplicate tweet ids are a contract violation.  An
    empty result is not an error (a warning is logged).
    """
    if chunk_size < 2:
        raise ValueError("chunk_size must be >= 2")
    if stopwords is None:
        stopwords = load_stopwords()

    seen: set[str] = set()
    buffer: list[CleanTweet] = []
    chunk_id = 0
    emitted = 0
    for raw in tweets:
        if raw.id in seen:
            raise ValueError(f"duplicate tweet id {raw.id!r} in input stream")
        seen.add(raw.id)
        ct = clean_tweet(raw, stopwords)
        reason = filter_tweet(ct, min_words=min_words, lang_policy=lang_policy)
        if reason is not None:
            log.debug("dropped tweet %s: %s", raw.id, reason)
            if drop_log is not None:
                drop_log.add(raw.id, reason)
            continue
        buffer.append(ct)
        if len(buffer) == chunk_size:
            yield Chunk(chunk_id, tuple(buffer))
            chunk_id += 1
            emitted += 1
            buffer = []
    if buffer:
        yield Chunk(chunk_id, tuple(buffer))
        emitted += 1
    if emitted == 0:
        log.warning("no tweets survived preprocessing; zero chunks emitted")


# ---------------------------------------------------------------------------
# File formats.  Tweets: newline-delimited JSON objects with keys
# id (required), text (required), lang, created_at.  Chunks: one JSON object
# per line, {"chunk_id": int, "tweets": [{id, word_tokens, original_text,
# lang}, ...]}.


def read_tweets(path: str) -> Iterator[RawTweet]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise FormatError(f"invalid JSON: {e}", path=path, line=lineno) from e
            if not isinstance(obj, dict) or "id" not in obj or "text" not in obj:
                raise FormatError("tweet record needs 'id' and 'text'", path=path, line=lineno)
            yield RawTweet(
                id=str(obj["id"]),
                text=str(obj["text"]),
                lang=obj.get("lang"),
                created_at=obj.get("created_at"),
            )


def write_chunks(chunks: Iterable[Chunk], path: str) -> int:
    count = 0
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for chunk in chunks:
            obj = {
                "chunk_id": chunk.chunk_id,
                "tweets": [
                    {
                        "id": t.id,
                        "word_tokens": list(t.word_tokens),
                        "original_text": t.original_text,
                        "lang": t.lang,
                    }
                    for t in chunk.tweets
                ],
            }
            fh.write(json.dumps(obj, ensure_ascii=False) + "\n")
            count += 1
    return count


def read_chunks(path: str) -> list[Chunk]:
    chunks = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise FormatError(f"invalid JSON: {e}", path=path, line=lineno) from e
            try:
                tweets = tuple(
                    CleanTweet(
                        id=t["id"],
                        word_tokens=tuple(t["word_tokens"]),
                        original_text=t.get("original_text", ""),
                        lang=t.get("lang"),
                    )
                    for t in obj["tweets"]
                )
                chunks.append(Chunk(chunk_id=int(obj["chunk_id"]), tweets=tweets))
            except (KeyError, TypeError) as e:
                raise FormatError(f"malformed chunk record: {e}", path=path, line=lineno) from e
    return chunks
