"""Corpus evaluation via the library API
=======================================

Loads the bundled fixture corpus, scores every summary with every metric,
and prints the per-(method, ratio) averages that the CLI would write to
report.csv.
"""

from pathlib import Path

from intent_eval import RunConfig, evaluate_corpus

FIXTURES = Path(__file__).resolve().parents[1] / "tests" / "fixtures"

config = RunConfig(
    documents=FIXTURES / "documents.jsonl",
    phrases=FIXTURES / "phrases.jsonl",
    summaries=FIXTURES / "summaries.jsonl",
    embeddings=FIXTURES / "tokens.emb",
    metrics=("intent", "bleu", "meteor", "rouge_l", "bert_score", "swms"),
    ratios=(0.3, 0.5, 0.7),
    output_dir=Path("."),  # not written in this demo
)

report = evaluate_corpus(config)
print(f"{len(report.rows)} summaries scored; dataset tag "
      f"{report.metadata['dataset_tag']!r}\n")

header = f"{'method':8s} {'ratio':5s}" + "".join(
    f"{c:>18s}" for c in report.columns)
print(header)
for avg in report.averages:
    cells = "".join(
        f"{(avg.scores[c] * 100):18.2f}" if avg.scores[c] is not None
        else f"{'-':>18s}"
        for c in report.columns
    )
    print(f"{avg.method:8s} {avg.ratio:<5.1f}{cells}")

print("\nunannotated documents are excluded from the intent averages:")
for avg in report.averages[:1]:
    print(f"  n_documents={avg.n_documents}, "
          f"n_intent_documents={avg.n_intent_documents}")
