import random

import pytest

from claimlens.expansion import (ExternalDocument, FileDocumentSource,
                                 extract_candidates, fetch_documents,
                                 split_sentences)
from oracles import bm25_rank_all


# -- sentence splitting --------------------------------------------------------

def test_split_basic_boundary():
    assert split_sentences("A b. C d.") == ["A b.", "C d."]


def test_split_no_terminator():
    assert split_sentences("No terminator") == ["No terminator"]


def test_split_lowercase_after_period_keeps_going():
    assert split_sentences("One. two") == ["One. two"]


def test_split_question_and_bang():
    assert split_sentences("Really? Yes! Sure.") == ["Really?", "Yes!", "Sure."]


def test_split_requires_whitespace():
    assert split_sentences("e.g.Nothing splits") == ["e.g.Nothing splits"]


def test_split_reconstruction_property():
    rng = random.Random(8)
    words = ["Alpha", "beta", "gamma", "Delta", "x9"]
    for _ in range(200):
        text = ""
        for _ in range(rng.randint(1, 30)):
            text += rng.choice(words + ["Mr.", "e.g."])
            text += rng.choice([" ", ". ", "! ", "? ", " ", "  "])
        text = text.strip()
        if not text:
            continue
        sentences = split_sentences(text)
        assert "".join("".join(s.split()) for s in sentences) == "".join(text.split())


# -- document source -----------------------------------------------------------

def make_source(tmp_path, docs):
    """docs: list of (filename, uri, title, text)."""
    lines = []
    for filename, uri, title, text in docs:
        (tmp_path / filename).write_text(text, encoding="utf-8")
        lines.append(f"{filename}\t{uri}\t{title}")
    (tmp_path / "manifest").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return FileDocumentSource(tmp_path)


def test_source_loads_paragraphs(tmp_path):
    source = make_source(tmp_path, [
        ("a.txt", "wiki://a", "Doc A", "First para line one.\nLine two.\n\nSecond para."),
    ])
    docs = source.documents()
    assert len(docs) == 1
    assert docs[0].paragraphs == ("First para line one. Line two.", "Second para.")
    assert docs[0].uri == "wiki://a"


def test_source_missing_manifest(tmp_path):
    assert FileDocumentSource(tmp_path).documents() == []


def test_source_malformed_manifest(tmp_path):
    (tmp_path / "manifest").write_text("justafilename\n", encoding="utf-8")
    with pytest.raises(ValueError, match="manifest line 1"):
        FileDocumentSource(tmp_path).documents()


def test_fetch_unconfigured_returns_empty():
    assert fetch_documents(None, "any query") == []


def test_fetch_empty_source(tmp_path):
    assert fetch_documents(FileDocumentSource(tmp_path), "query") == []


def test_fetch_limit_caps_results(tmp_path):
    source = make_source(tmp_path, [
        (f"d{i}.txt", f"u{i}", f"T{i}", "shared topic words here") for i in range(3)
    ])
    assert len(fetch_documents(source, "shared topic", limit=10)) <= 3


def test_fetch_ranks_matching_document_first(tmp_path):
    source = make_source(tmp_path, [
        ("a.txt", "u-a", "Gardens", "Tomatoes grow in warm soil.\n\nWater them daily."),
        ("b.txt", "u-b", "Cars", "Engines burn fuel efficiently."),
        ("c.txt", "u-c", "Stars", "Galaxies contain billions of stars."),
    ])
    docs = fetch_documents(source, "tomatoes warm soil", limit=10)
    assert docs and docs[0].uri == "u-a"
    # cross-check rank order against the brute-force oracle over full texts
    full = {
        "000000": "Gardens Tomatoes grow in warm soil. Water them daily.",
        "000001": "Cars Engines burn fuel efficiently.",
        "000002": "Stars Galaxies contain billions of stars.",
    }
    expected = [doc_id for doc_id, _ in bm25_rank_all(full, "tomatoes warm soil")]
    assert [d.uri for d in docs] == [f"u-{'abc'[int(i)]}" for i in expected]


# -- candidate extraction --------------------------------------------------------

def test_extract_three_sentence_paragraph():
    doc = ExternalDocument("u", "T", ("First point. More detail here. Even more.",))
    candidates = extract_candidates([doc])
    assert candidates.perspectives == [("First point.", "u")]
    assert candidates.evidence == [("More detail here. Even more.", "u")]


def test_extract_single_sentence_paragraph():
    doc = ExternalDocument("u", "T", ("Only one sentence here.",))
    candidates = extract_candidates([doc])
    assert candidates.perspectives == [("Only one sentence here.", "u")]
    assert candidates.evidence == []


def test_extract_no_documents():
    candidates = extract_candidates([])
    assert candidates.perspectives == [] and candidates.evidence == []


def test_conservation_property():
    rng = random.Random(21)
    sentences = ["Alpha beta gamma.", "Delta grows fast.", "Nine lives remain.",
                 "Quick brown fox.", "Lazy dogs sleep."]
    for _ in range(50):
        docs = []
        total_paragraphs = 0
        multi = 0
        for d in range(rng.randint(1, 4)):
            paragraphs = []
            for _ in range(rng.randint(1, 5)):
                count = rng.randint(1, 4)
                paragraphs.append(" ".join(rng.choice(sentences) for _ in range(count)))
                total_paragraphs += 1
                if count >= 2:
                    multi += 1
            docs.append(ExternalDocument(f"u{d}", f"T{d}", tuple(paragraphs)))
        candidates = extract_candidates(docs)
        assert len(candidates.perspectives) == total_paragraphs
        assert len(candidates.evidence) == multi
        assert all(uri.startswith("u") for _, uri in candidates.perspectives)


def test_document_invariant_rejects_empty_paragraphs():
    with pytest.raises(ValueError):
        ExternalDocument("u", "T", ())
    with pytest.raises(ValueError):
        ExternalDocument("u", "T", ("ok", "  "))
