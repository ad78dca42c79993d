"""Preprocessing walkthrough: raw tweets -> tagged tokens -> clean tweets ->
fixed-size chunks.

Run:  python3 demos/01_preprocessing.py
"""

from topicbench.corpus import (
    DropLog,
    LanguagePolicy,
    RawTweet,
    chunk_stream,
    clean_tweet,
    load_stopwords,
    tokenize,
)

# ---------------------------------------------------------------------------
# Tokenization tags every piece of a tweet: words carry a script-derived
# language code, and hashtags / mentions / urls / numbers / emoji / punct
# are kept as their own token kinds.

text = "COVID cases rising again! 1,200 new today #covid19 @who https://t.co/x \U0001F637"
for token in tokenize(text):
    lang = f"({token.lang})" if token.lang else ""
    print(f"  {token.tag.value:8s} {token.surface} {lang}")

# ---------------------------------------------------------------------------
# Cleaning keeps only word tokens, lowercased, minus stopwords.  The shipped
# stopword list is versioned so runs are reproducible.

stopwords = load_stopwords()
raw = RawTweet(id="demo-1", text=text, lang="en")
clean = clean_tweet(raw, stopwords)
print("\nword tokens after cleanup:", list(clean.word_tokens))

# ---------------------------------------------------------------------------
# Filtering drops tweets with fewer than four remaining words, plus tweets
# the language policy rejects.  Chunking groups the survivors, in arrival
# order, into fixed-size units that the rest of the pipeline treats as
# independent clustering problems.

stream = [
    RawTweet(id="t1", text="vaccine doses arriving in every region this week", lang="en"),
    RawTweet(id="t2", text="so true!!", lang="en"),  # too short after cleanup
    RawTweet(id="t3", text="la situación es muy grave hoy", lang="es"),  # wrong language
    RawTweet(id="t4", text="hospitals report fewer severe symptoms this month", lang="en"),
    RawTweet(id="t5", text="schools reopen with remote classes for students", lang="en"),
    RawTweet(id="t6", text="travel quarantine rules extended at the border", lang="en"),
]

drop_log = DropLog()
chunks = list(
    chunk_stream(
        stream,
        chunk_size=2,
        stopwords=stopwords,
        lang_policy=LanguagePolicy.METADATA,
        drop_log=drop_log,
    )
)

print(f"\n{len(chunks)} chunk(s) from {len(stream)} tweets; dropped: {drop_log.dropped}")
for chunk in chunks:
    ids = [t.id for t in chunk.tweets]
    print(f"  chunk {chunk.chunk_id}: {ids}")
