from pathlib import Path

import pytest

from intent_eval.corpus import IntentPhraseSet, Phrase, Sentence, SummaryRecord

FIXTURES = Path(__file__).resolve().parent / "fixtures"


def make_sentences(token_lists):
    """Sentences straight from token lists (already-normalized tokens)."""
    sentences = []
    pos = 0
    for i, toks in enumerate(token_lists):
        text = " ".join(toks)
        sentences.append(
            Sentence(index=i, text=text, tokens=tuple(toks),
                     char_span=(pos, pos + len(text)))
        )
        pos += len(text) + 1
    return tuple(sentences)


def make_summary(token_lists, doc_id="doc", method="method", ratio=0.5):
    return SummaryRecord(
        doc_id=doc_id,
        method=method,
        ratio=ratio,
        raw_text=" ".join(" ".join(t) for t in token_lists),
        sentences=make_sentences(token_lists),
    )


def make_phrase_set(token_lists, doc_id="doc"):
    return IntentPhraseSet(
        doc_id=doc_id,
        phrases=tuple(Phrase(text=" ".join(t), tokens=tuple(t)) for t in token_lists),
        unannotated=not token_lists,
    )


@pytest.fixture
def fixtures_dir():
    return FIXTURES
