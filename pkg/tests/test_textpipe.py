import pytest
from hypothesis import given, strategies as st

from scriptgrader.textpipe import (
    EmptyCorpus,
    Vocabulary,
    build_vocabulary,
    encode,
    load_vocabulary,
    save_vocabulary,
    tokenize,
)


class TestTokenize:
    def test_basic(self):
        seq = tokenize("Hello, world!")
        assert seq.tokens == ("hello", "world")
        assert seq.source_length == 2

    def test_empty(self):
        seq = tokenize("")
        assert seq.tokens == ()
        assert seq.source_length == 0

    def test_interior_punctuation_preserved(self):
        seq = tokenize("LSTM-based models (RNNs).")
        assert seq.tokens == ("lstm-based", "models", "rnns")
        assert seq.source_length == 3

    def test_fully_punctuation_word_dropped_but_counted(self):
        seq = tokenize("yes -- no")
        assert seq.tokens == ("yes", "no")
        assert seq.source_length == 3

    def test_unicode_punctuation(self):
        assert tokenize("«Bonjour»").tokens == ("bonjour",)

    @given(st.text(max_size=80))
    def test_total_and_deterministic(self, text):
        a = tokenize(text)
        b = tokenize(text)
        assert a == b
        assert all(t for t in a.tokens)
        assert all(" " not in t for t in a.tokens)

    @given(st.text(max_size=80))
    def test_idempotent_on_rejoined_output(self, text):
        once = tokenize(text)
        again = tokenize(" ".join(once.tokens))
        assert again.tokens == once.tokens


class TestVocabulary:
    def test_frequency_ordering(self):
        vocab = build_vocabulary([tokenize("a b a")], min_count=1)
        assert vocab.term_to_id == {"a": 1, "b": 2}

    def test_min_count_excludes(self):
        vocab = build_vocabulary([tokenize("a b a")], min_count=2)
        assert vocab.term_to_id == {"a": 1}

    def test_tie_break_lexicographic(self):
        vocab = build_vocabulary([tokenize("beta alpha")], min_count=1)
        assert vocab.term_to_id == {"alpha": 1, "beta": 2}

    def test_deterministic(self):
        seqs = [tokenize("x y z z y x w")]
        assert build_vocabulary(seqs, 1) == build_vocabulary(seqs, 1)

    def test_empty_corpus_rejected(self):
        with pytest.raises(EmptyCorpus):
            build_vocabulary([], min_count=1)

    def test_roundtrip_serialization(self):
        vocab = build_vocabulary([tokenize("c b a a b c c")], min_count=1)
        assert load_vocabulary(save_vocabulary(vocab)) == vocab

    def test_serialization_sorted_by_id(self):
        vocab = Vocabulary({"b": 2, "a": 1})
        assert save_vocabulary(vocab) == "a\t1\nb\t2\n"

    def test_load_rejects_gapped_ids(self):
        with pytest.raises(ValueError):
            load_vocabulary("a\t1\nb\t3\n")


class TestEncode:
    def test_direct_lookup(self):
        vocab = Vocabulary({"a": 1, "b": 2})
        assert encode(tokenize("a b"), vocab) == [1, 2]

    def test_oov_maps_to_zero(self):
        vocab = Vocabulary({"a": 1})
        assert encode(tokenize("c"), vocab) == [0]

    def test_empty(self):
        assert encode(tokenize(""), Vocabulary({"a": 1})) == []

    @given(st.text(max_size=60))
    def test_length_preserving(self, text):
        vocab = Vocabulary({"a": 1, "b": 2})
        seq = tokenize(text)
        assert len(encode(seq, vocab)) == len(seq.tokens)
