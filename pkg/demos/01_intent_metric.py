"""Intent metric walkthrough
===========================

Scores a summary against annotated intent phrases: a summary sentence
counts toward precision when it contains a phrase verbatim (at the token
level), a phrase counts toward recall when some sentence contains it.
"""

from intent_eval import (
    evaluate_intent,
    intent_f1,
    phrase_match,
    segment_sentences,
    tokenize,
)
from intent_eval.corpus import IntentPhraseSet, Phrase, SummaryRecord

document = (
    "Accused No. 1 Balwan Singh, on 22nd January, 2007, was seen talking "
    "with the co-accused regarding preparation to kill. The deceased was "
    "last seen near the village well. Dr. Mehra noted three incised wounds. "
    "The trial court convicted the accused."
)
phrases = ["preparation to kill", "incised wounds"]

summary_text = (
    "The accused was talking with the co-accused regarding preparation to "
    "kill. The trial court convicted the accused."
)

# token-level containment behind the metric
sent_tokens = tokenize(summary_text)
for p in phrases:
    print(f"{p!r} contained in summary tokens: "
          f"{phrase_match(tokenize(p), sent_tokens)}")

phrase_set = IntentPhraseSet(
    doc_id="demo",
    phrases=tuple(Phrase(p, tuple(tokenize(p))) for p in phrases),
)
summary = SummaryRecord(
    doc_id="demo",
    method="demo",
    ratio=0.5,
    raw_text=summary_text,
    sentences=tuple(segment_sentences(summary_text)),
)

score = evaluate_intent(phrase_set, summary)
print(f"\nprecision = {score.precision:.3f}  "
      f"(sentences with a phrase: {sorted(score.matched_sentence_indices)})")
print(f"recall    = {score.recall:.3f}  "
      f"(phrases found: {sorted(score.matched_phrase_indices)})")
print(f"f1        = {score.f1:.3f}")

# the harmonic mean is zero as soon as either side is zero
print(f"\nintent_f1(1.0, 0.0) = {intent_f1(1.0, 0.0)}")
print(f"intent_f1(0.5, 0.5) = {intent_f1(0.5, 0.5)}")
