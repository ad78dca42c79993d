import numpy as np
import pytest

from conftest import make_chunk
from topicbench.corpus import CleanTweet
from topicbench.embedding import (
    EmbedderSpec,
    EmbeddingSources,
    WordVectorTable,
    compose_tweet_vector,
    embed_chunk,
    load_sentence_vectors,
    load_word_vectors,
    save_word_vectors,
    synthetic_embedder,
)
from topicbench.errors import FormatError


def _tweet(words, tid="x"):
    return CleanTweet(id=tid, word_tokens=tuple(words), original_text=" ".join(words))


def _table(entries):
    dim = len(next(iter(entries.values())))
    return WordVectorTable(dim=dim, entries={k: np.asarray(v, float) for k, v in entries.items()})


class TestEmbedderSpec:
    @pytest.mark.parametrize(
        "name,dim,kind",
        [
            ("word2vec", 400, "word-level"),
            ("fasttext", 400, "word-level"),
            ("glove", 200, "word-level"),
            ("bert", 768, "sentence-level"),
            ("t5", 768, "sentence-level"),
        ],
    )
    def test_named_dims(self, name, dim, kind):
        spec = EmbedderSpec.named(name)
        assert (spec.dim, spec.kind) == (dim, kind)

    def test_named_dim_enforced(self):
        with pytest.raises(ValueError):
            EmbedderSpec(name="glove", kind="word-level", dim=300)

    def test_unknown_name_rejected(self):
        with pytest.raises(ValueError):
            EmbedderSpec.named("elmo")


class TestLoadWordVectors:
    def test_small_file(self, tmp_path):
        p = tmp_path / "v.vec"
        p.write_text("2 3\na 1 0 0\nb 0 1 0\n", encoding="utf-8")
        table = load_word_vectors(str(p))
        assert table.dim == 3 and len(table) == 2
        assert np.array_equal(table.entries["a"], [1.0, 0.0, 0.0])

    def test_row_count_mismatch(self, tmp_path):
        p = tmp_path / "v.vec"
        p.write_text("5 3\na 1 0 0\nb 0 1 0\n", encoding="utf-8")
        with pytest.raises(FormatError, match="header says 5"):
            load_word_vectors(str(p))

    def test_non_finite_rejected(self, tmp_path):
        p = tmp_path / "v.vec"
        p.write_text("1 3\na 1 NaN 0\n", encoding="utf-8")
        with pytest.raises(FormatError, match="line 2"):
            load_word_vectors(str(p))

    def test_dim_mismatch_names_line(self, tmp_path):
        p = tmp_path / "v.vec"
        p.write_text("2 3\na 1 0 0\nb 0 1\n", encoding="utf-8")
        with pytest.raises(FormatError, match="line 3"):
            load_word_vectors(str(p))

    def test_malformed_header(self, tmp_path):
        p = tmp_path / "v.vec"
        p.write_text("banana\n", encoding="utf-8")
        with pytest.raises(FormatError, match="line 1"):
            load_word_vectors(str(p))

    def test_uppercase_token_rejected(self, tmp_path):
        p = tmp_path / "v.vec"
        p.write_text("1 2\nApple 1 0\n", encoding="utf-8")
        with pytest.raises(FormatError, match="lowercase"):
            load_word_vectors(str(p))

    def test_duplicate_token_rejected(self, tmp_path):
        p = tmp_path / "v.vec"
        p.write_text("2 2\na 1 0\na 0 1\n", encoding="utf-8")
        with pytest.raises(FormatError, match="duplicate"):
            load_word_vectors(str(p))

    def test_round_trip_bit_identical(self, tmp_path):
        rng = np.random.default_rng(0)
        table = _table({f"w{i}": rng.standard_normal(5) for i in range(20)})
        p1, p2 = tmp_path / "a.vec", tmp_path / "b.vec"
        save_word_vectors(table, str(p1))
        loaded = load_word_vectors(str(p1))
        save_word_vectors(loaded, str(p2))
        assert p1.read_bytes() == p2.read_bytes()
        for key in table.entries:
            assert np.array_equal(table.entries[key], loaded.entries[key])


class TestLoadSentenceVectors:
    def test_small_file(self, tmp_path):
        p = tmp_path / "s.tsv"
        p.write_text("t1\t1 0 0 0\nt2\t0 1 0 0\n", encoding="utf-8")
        m = load_sentence_vectors(str(p))
        assert set(m) == {"t1", "t2"}
        assert m["t1"].shape == (4,)

    def test_duplicate_id(self, tmp_path):
        p = tmp_path / "s.tsv"
        p.write_text("t1\t1 0\nt1\t0 1\n", encoding="utf-8")
        with pytest.raises(FormatError, match="duplicate"):
            load_sentence_vectors(str(p))

    def test_ragged_dims(self, tmp_path):
        p = tmp_path / "s.tsv"
        p.write_text("t1\t1 0\nt2\t0 1 2\n", encoding="utf-8")
        with pytest.raises(FormatError, match="ragged"):
            load_sentence_vectors(str(p))

    def test_empty_file_warns(self, tmp_path, caplog):
        p = tmp_path / "s.tsv"
        p.write_text("", encoding="utf-8")
        with caplog.at_level("WARNING"):
            assert load_sentence_vectors(str(p)) == {}
        assert any("empty" in m for m in caplog.messages)


class TestComposeTweetVector:
    def test_repeated_token(self):
        table = _table({"a": [1.0, 0.0]})
        vec = compose_tweet_vector(_tweet(["a", "a"]), table)
        assert np.allclose(vec, [1.0, 0.0])

    def test_mean_of_two(self):
        table = _table({"a": [1.0, 0.0], "b": [0.0, 1.0]})
        vec = compose_tweet_vector(_tweet(["a", "b"]), table)
        assert np.allclose(vec, [0.5, 0.5])

    def test_out_of_vocabulary(self):
        table = _table({"a": [1.0, 0.0]})
        assert compose_tweet_vector(_tweet(["zzz"]), table) is None

    def test_oov_tokens_skipped_not_zeroed(self):
        table = _table({"a": [1.0, 0.0]})
        vec = compose_tweet_vector(_tweet(["a", "zzz"]), table)
        assert np.allclose(vec, [1.0, 0.0])

    @pytest.mark.parametrize("seed", range(5))
    def test_permutation_invariant(self, seed):
        rng = np.random.default_rng(seed)
        table = _table({f"w{i}": rng.standard_normal(4) for i in range(6)})
        words = [f"w{i}" for i in rng.integers(0, 6, size=8)]
        shuffled = list(words)
        rng.shuffle(shuffled)
        a = compose_tweet_vector(_tweet(words), table)
        b = compose_tweet_vector(_tweet(shuffled), table)
        assert np.allclose(a, b)


class TestSyntheticEmbedder:
    def test_deterministic(self):
        t = _tweet(["alpha", "beta", "gamma"])
        assert np.array_equal(synthetic_embedder(t, 32, 7), synthetic_embedder(t, 32, 7))

    def test_unit_norm(self):
        t = _tweet(["alpha", "beta"])
        assert abs(np.linalg.norm(synthetic_embedder(t, 16, 0)) - 1.0) < 1e-9

    def test_disjoint_tokens_differ(self):
        a = synthetic_embedder(_tweet(["aa", "bb", "cc"]), 32, 0)
        b = synthetic_embedder(_tweet(["dd", "ee", "ff"]), 32, 0)
        assert not np.allclose(a, b)

    @pytest.mark.parametrize("seed", range(10))
    def test_shared_tokens_positive_similarity(self, seed):
        shared = [f"s{seed}_{i}" for i in range(4)]
        a = synthetic_embedder(_tweet(shared + [f"a{seed}x"]), 64, seed)
        b = synthetic_embedder(_tweet(shared + [f"b{seed}y"]), 64, seed)
        assert float(a @ b) > 0.0

    def test_seed_changes_vectors(self):
        t = _tweet(["alpha", "beta"])
        assert not np.allclose(synthetic_embedder(t, 32, 0), synthetic_embedder(t, 32, 1))

    def test_dim_validated(self):
        with pytest.raises(ValueError):
            synthetic_embedder(_tweet(["a"]), 1, 0)


class TestEmbedChunk:
    def test_all_in_vocabulary(self):
        chunk = make_chunk([["a", "b"], ["b"], ["a"]])
        spec = EmbedderSpec(name="w", kind="word-level", dim=2)
        sources = EmbeddingSources([spec], {"w": _table({"a": [1, 0], "b": [0, 1]})})
        e = embed_chunk(chunk, spec, sources)
        assert e.rows.shape == (3, 2)
        assert e.tweet_ids == ("t0", "t1", "t2")

    def test_fairness_intersection_excludes_for_all(self):
        chunk = make_chunk([["a"], ["zzz"], ["b"]])
        w = EmbedderSpec(name="w", kind="word-level", dim=2)
        syn = EmbedderSpec.synthetic("syn", dim=8, seed=0)
        sources = EmbeddingSources([w, syn], {"w": _table({"a": [1, 0], "b": [0, 1]})})
        for spec in (w, syn):
            e = embed_chunk(chunk, spec, sources)
            assert e.tweet_ids == ("t0", "t2")
            assert e.rows.shape[0] == 2

    def test_retained_lists_identical_across_embedders(self):
        chunk = make_chunk([["a"], ["b"], ["c"], ["b", "c"]])
        w1 = EmbedderSpec(name="w1", kind="word-level", dim=2)
        w2 = EmbedderSpec(name="w2", kind="word-level", dim=3)
        sources = EmbeddingSources(
            [w1, w2],
            {
                "w1": _table({"a": [1, 0], "b": [0, 1], "c": [1, 1]}),
                "w2": _table({"b": [1, 0, 0], "c": [0, 1, 0], "q": [0, 0, 1]}),
            },
        )
        ids = [embed_chunk(chunk, s, sources).tweet_ids for s in (w1, w2)]
        assert ids[0] == ids[1] == ("t1", "t2", "t3")

    def test_sentence_alignment(self):
        chunk = make_chunk([["x"], ["y"], ["z"]])
        spec = EmbedderSpec(name="s", kind="sentence-level", dim=4)
        sent = {f"t{i}": np.eye(4)[i % 4] for i in range(3)}
        sources = EmbeddingSources([spec], sentence_maps={"s": sent})
        e = embed_chunk(chunk, spec, sources)
        assert e.tweet_ids == ("t0", "t1", "t2")
        assert np.array_equal(e.rows[1], sent["t1"])

    def test_sentence_missing_id_named_in_error(self):
        chunk = make_chunk([["x"], ["y"]])
        spec = EmbedderSpec(name="s", kind="sentence-level", dim=2)
        sources = EmbeddingSources([spec], sentence_maps={"s": {"t0": np.array([1.0, 0.0])}})
        with pytest.raises(ValueError, match="t1"):
            embed_chunk(chunk, spec, sources)

    def test_zero_norm_sentence_vector_excluded_everywhere(self):
        chunk = make_chunk([["x"], ["y"]])
        s = EmbedderSpec(name="s", kind="sentence-level", dim=2)
        syn = EmbedderSpec.synthetic("syn", dim=8)
        sources = EmbeddingSources(
            [s, syn],
            sentence_maps={"s": {"t0": np.array([1.0, 0.0]), "t1": np.zeros(2)}},
        )
        assert embed_chunk(chunk, s, sources).tweet_ids == ("t0",)
        assert embed_chunk(chunk, syn, sources).tweet_ids == ("t0",)

    def test_rows_finite_and_nonzero(self):
        chunk = make_chunk([["a", "b", "c"]] * 4)
        spec = EmbedderSpec.synthetic("syn", dim=16, seed=3)
        e = embed_chunk(chunk, spec, EmbeddingSources([spec]))
        assert np.all(np.isfinite(e.rows))
        assert np.all(np.linalg.norm(e.rows, axis=1) > 0)

    def test_missing_source_rejected(self):
        spec = EmbedderSpec(name="w", kind="word-level", dim=2)
        with pytest.raises(ValueError, match="word-vector"):
            EmbeddingSources([spec])
