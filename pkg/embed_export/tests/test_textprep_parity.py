"""The exporter's text preparation must agree exactly with the evaluation
toolkit, which consumes its files keyed by normalized tokens and sentence
indices. intent_eval is a test-only dependency here."""

import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

intent_eval = pytest.importorskip("intent_eval")

from embed_export import normalize, split_sentences, tokenize

FIXTURES = Path(__file__).resolve().parents[2] / "tests" / "fixtures"

TRICKY = [
    "",
    "   ",
    "?! ...",
    "Preparation to Kill.",
    "robbed   ARTICLES,were",
    "Criminal Appeal No. 727 of 2015 was filed. The court agreed.",
    "Mr. K. Sharma appeared. The court rose.",
    "Was he there? He was! Nobody doubted it.",
    "... He ran!",
    "The matter was heard by Dr. Rao and Smt. Devi. The appeal failed.",
    "Accused No. 1, on 22nd January, 2007, was seen. PW-4 deposed.",
    "i.e. the second part. The third part.",
    "Section 302 IPC r/w S. 34. The sentence stands.",
]


class TestNormalizeParity:
    @pytest.mark.parametrize("text", TRICKY)
    def test_fixed_cases(self, text):
        assert normalize(text) == intent_eval.normalize(text)
        assert tokenize(text) == intent_eval.tokenize(text)

    @given(st.text(max_size=120))
    @settings(max_examples=300)
    def test_random_text(self, text):
        assert normalize(text) == intent_eval.normalize(text)
        assert tokenize(text) == intent_eval.tokenize(text)


class TestSegmentationParity:
    @pytest.mark.parametrize("text", TRICKY)
    def test_fixed_cases(self, text):
        ours = split_sentences(text)
        theirs = intent_eval.segment_sentences(text)
        assert [t for t, _ in ours] == [s.text for s in theirs]
        assert [toks for _, toks in ours] == [list(s.tokens) for s in theirs]

    @given(st.text(max_size=200))
    @settings(max_examples=300)
    def test_random_text(self, text):
        ours = split_sentences(text)
        theirs = intent_eval.segment_sentences(text)
        assert [t for t, _ in ours] == [s.text for s in theirs]

    def test_fixture_corpus(self):
        raw = [json.loads(l) for l in
               (FIXTURES / "documents.jsonl").read_text().splitlines()]
        for rec in raw:
            ours = split_sentences(rec["text"])
            theirs = intent_eval.segment_sentences(rec["text"])
            assert [t for t, _ in ours] == [s.text for s in theirs]
            assert [toks for _, toks in ours] == [list(s.tokens) for s in theirs]
