import random

import pytest

from claimlens import _kernels
from claimlens.retrieval import build_index, search, search_evidence, tokenize
from oracles import bm25_rank_all


def test_tokenize_examples():
    assert tokenize("Social media, like Twitter!") == ["social", "media", "like", "twitter"]
    assert tokenize("") == []
    assert tokenize("A-B c3") == ["a", "b", "c3"]


def test_tokenize_stopwords_and_order():
    assert tokenize("the cat the hat", {"the"}) == ["cat", "hat"]
    assert tokenize("Zebra apple zebra", frozenset()) == ["zebra", "apple", "zebra"]


def test_build_index_shared_token_posting():
    idx = build_index([("d1", "apple pie"), ("d2", "apple tart")])
    assert idx.postings["apple"] == [("d1", 1), ("d2", 1)]


def test_build_index_empty():
    idx = build_index([])
    assert idx.doc_count == 0
    assert idx.avg_doc_length == 0.0
    assert search(idx, "anything", 5) == []


def test_build_index_term_frequency():
    idx = build_index([("d1", "a a b")])
    assert idx.postings["a"] == [("d1", 2)]
    assert idx.doc_lengths == {"d1": 3}


def test_build_index_duplicate_doc_id():
    with pytest.raises(ValueError, match="duplicate doc id"):
        build_index([("d1", "x"), ("d1", "y")])


def test_empty_tokenization_indexed_with_zero_length():
    idx = build_index([("d1", "..."), ("d2", "words here")])
    assert idx.doc_lengths["d1"] == 0
    assert all("d1" not in [doc for doc, _ in plist] for plist in idx.postings.values())


CORPUS3 = [
    ("d1", "social media harms productivity"),
    ("d2", "social media connects people easily"),
    ("d3", "cats sleep all day"),
]


def test_search_ranked_example():
    # frozen from the brute-force oracle with k1=1.2, b=0.75 (re-checked below)
    idx = build_index(CORPUS3)
    hits = search(idx, "social media productivity", 2)
    assert [h.doc_id for h in hits] == ["d1", "d2"]
    expected = bm25_rank_all(dict(CORPUS3), "social media productivity")
    assert [(h.doc_id, h.score) for h in hits] == expected[:2]


def test_search_no_match():
    idx = build_index(CORPUS3)
    assert search(idx, "zebra", 5) == []


def test_search_k_exceeds_matches():
    idx = build_index(CORPUS3)
    hits = search(idx, "social media", 10)
    assert [h.doc_id for h in hits] == ["d1", "d2"]


def test_search_empty_query():
    idx = build_index(CORPUS3)
    assert search(idx, "!!!", 3) == []


def test_search_k_validation():
    idx = build_index(CORPUS3)
    with pytest.raises(ValueError):
        search(idx, "social", 0)


def test_search_evidence_is_concatenation():
    idx = build_index(CORPUS3)
    assert search_evidence(idx, "c words", "p words", 3) == search(idx, "c words p words", 3)
    assert search_evidence(idx, "social media", "", 3) == search(idx, "social media", 3)


def test_search_evidence_disjoint_vocabulary_matches_oracle():
    docs = [
        ("e1", "solar panels reduce emissions"),
        ("e2", "wind turbines reduce emissions"),
        ("e3", "coal plants increase emissions"),
        ("e4", "solar adoption grows yearly"),
        ("e5", "turbines spin in wind farms"),
    ]
    idx = build_index(docs)
    claim, perspective = "solar panels", "wind turbines"
    hits = search_evidence(idx, claim, perspective, 5)
    expected = bm25_rank_all(dict(docs), claim + " " + perspective)
    assert [(h.doc_id, h.score) for h in hits] == expected[:5]


def _random_corpus(rng, max_docs=60, vocab_size=25, max_len=12):
    vocab = [f"w{i}" for i in range(vocab_size)]
    n = rng.randrange(max_docs + 1)
    return {
        f"d{i:03d}": " ".join(rng.choice(vocab) for _ in range(rng.randrange(max_len + 1)))
        for i in range(n)
    }


def test_oracle_equivalence_randomized():
    rng = random.Random(1234)
    vocab = [f"w{i}" for i in range(25)] + ["unseen"]
    for _ in range(40):
        docs = _random_corpus(rng)
        idx = build_index(sorted(docs.items()))
        for _ in range(10):
            query = " ".join(rng.choice(vocab) for _ in range(rng.randint(1, 5)))
            k = rng.randint(1, 10)
            hits = search(idx, query, k)
            expected = bm25_rank_all(docs, query)[:k]
            assert [(h.doc_id, h.score) for h in hits] == expected


def test_monotone_k_prefix_property():
    rng = random.Random(99)
    docs = _random_corpus(rng, max_docs=40)
    idx = build_index(sorted(docs.items()))
    for _ in range(20):
        query = " ".join(rng.choice([f"w{i}" for i in range(25)])
                         for _ in range(rng.randint(1, 4)))
        for k in range(1, 8):
            shorter = [h.doc_id for h in search(idx, query, k)]
            longer = [h.doc_id for h in search(idx, query, k + 1)]
            assert longer[:len(shorter)] == shorter


def test_scores_non_negative_and_deterministic():
    rng = random.Random(7)
    docs = _random_corpus(rng, max_docs=50)
    idx = build_index(sorted(docs.items()))
    query = "w1 w2 w3"
    first = search(idx, query, 10)
    second = search(idx, query, 10)
    assert first == second
    assert all(h.score >= 0 for h in first)


def test_pure_and_native_kernels_agree():
    if not _kernels.native_available:
        pytest.skip("native kernel not built")
    import numpy as np

    rng = random.Random(5)
    docs = _random_corpus(rng, max_docs=80)
    idx = build_index(sorted(docs.items()))
    for _ in range(25):
        query = " ".join(rng.choice([f"w{i}" for i in range(25)])
                         for _ in range(rng.randint(1, 5)))
        tokens = [t for t in query.split() if t in idx._postings]
        terms = [(idx._postings[t][0], idx._postings[t][1], idx.idf(t)) for t in tokens]
        if not terms:
            continue
        norms = 1.2 * (1.0 - 0.75 + 0.75 * (idx._lengths / idx.avg_doc_length))
        a = np.zeros(idx.doc_count)
        b = np.zeros(idx.doc_count)
        _kernels.pure.accumulate_scores(a, norms, terms, 1.2)
        _kernels._native.accumulate_scores(b, norms, terms, 1.2)
        assert np.array_equal(a, b)
