"""Intent metric: phrase-containment precision, recall and F1.

A phrase and a summary sentence form a close pair when the phrase's token
sequence occurs contiguously inside the sentence's token sequence.
Precision is the fraction of summary sentences in some close pair, recall
the fraction of phrases in some close pair, and the headline score their
harmonic mean. All functions are pure and operate on normalized tokens.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .corpus import IntentPhraseSet, SummaryRecord
from .errors import DomainError, EmptyList, EmptyPhrase, EmptySummary, NoPhrases


@dataclass(frozen=True)
class IntentScore:
    precision: float
    recall: float
    f1: float
    matched_phrase_indices: frozenset[int]
    matched_sentence_indices: frozenset[int]


@dataclass(frozen=True)
class CorpusIntentScore:
    """Arithmetic means over per-document scores. f1 is the mean of the
    per-document F1 values; f1_from_averages recomputes F1 from the
    averaged precision/recall instead, reported for transparency."""

    precision: float
    recall: float
    f1: float
    f1_from_averages: float
    count: int


def phrase_match(phrase: Sequence[str], sentence: Sequence[str]) -> bool:
    """True iff `phrase` occurs as a contiguous token run inside `sentence`.

    Token-level containment: ["kill"] does not match ["killing"].
    """
    if not phrase:
        raise EmptyPhrase("phrase has no tokens")
    n, m = len(sentence), len(phrase)
    if m > n:
        return False
    first = phrase[0]
    for k in range(n - m + 1):
        if sentence[k] == first and tuple(sentence[k : k + m]) == tuple(phrase):
            return True
    return False


def _containment(phrases: IntentPhraseSet, summary: SummaryRecord):
    if not phrases.phrases:
        raise NoPhrases(f"no intent phrases for {phrases.doc_id!r}")
    if not summary.sentences:
        raise EmptySummary(f"empty summary for {summary.doc_id!r}")
    matched_phrases: set[int] = set()
    matched_sentences: set[int] = set()
    for j, sent in enumerate(summary.sentences):
        for i, phrase in enumerate(phrases.phrases):
            if phrase_match(phrase.tokens, sent.tokens):
                matched_phrases.add(i)
                matched_sentences.add(j)
    return matched_phrases, matched_sentences


def intent_precision(phrases: IntentPhraseSet, summary: SummaryRecord) -> float:
    """Fraction of summary sentences containing at least one phrase."""
    _, matched_sentences = _containment(phrases, summary)
    return len(matched_sentences) / len(summary.sentences)


def intent_recall(phrases: IntentPhraseSet, summary: SummaryRecord) -> float:
    """Fraction of phrases contained in at least one summary sentence."""
    matched_phrases, _ = _containment(phrases, summary)
    return len(matched_phrases) / len(phrases.phrases)


def intent_f1(p: float, r: float) -> float:
    """Harmonic mean of precision and recall; 0 when both are 0."""
    if not (0.0 <= p <= 1.0) or not (0.0 <= r <= 1.0):
        raise DomainError(f"precision/recall outside [0, 1]: {p}, {r}")
    if p + r == 0.0:
        return 0.0
    return 2.0 * p * r / (p + r)


def evaluate_intent(phrases: IntentPhraseSet, summary: SummaryRecord) -> IntentScore:
    """Precision, recall, F1 and the matched index sets for one summary."""
    matched_phrases, matched_sentences = _containment(phrases, summary)
    p = len(matched_sentences) / len(summary.sentences)
    r = len(matched_phrases) / len(phrases.phrases)
    return IntentScore(
        precision=p,
        recall=r,
        f1=intent_f1(p, r),
        matched_phrase_indices=frozenset(matched_phrases),
        matched_sentence_indices=frozenset(matched_sentences),
    )


def corpus_intent_average(scores: Sequence[IntentScore]) -> CorpusIntentScore:
    """Mean precision, recall and F1 over per-document scores."""
    if not scores:
        raise EmptyList("no scores to average")
    n = len(scores)
    p = sum(s.precision for s in scores) / n
    r = sum(s.recall for s in scores) / n
    f1 = sum(s.f1 for s in scores) / n
    return CorpusIntentScore(
        precision=p, recall=r, f1=f1, f1_from_averages=intent_f1(p, r), count=n
    )
