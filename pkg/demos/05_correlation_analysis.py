"""Correlation analysis
======================

Spearman rank correlation of automated metrics against human judgments,
the metric-vs-metric correlation matrix, inter-annotator agreement, and
cross-dataset averaging.
"""

from intent_eval import (
    cohen_kappa,
    correlation_matrix,
    cross_dataset_average,
    human_score,
    spearman,
)

# metric scores and 1-5 human ratings for eight (document, method) pairs
metric = [0.12, 0.55, 0.40, 0.91, 0.33, 0.78, 0.05, 0.62]
relevance = [2, 4, 3, 5, 2, 4, 1, 4]
readability = [3, 4, 3, 5, 3, 5, 2, 4]

human = [human_score(r, d) for r, d in zip(relevance, readability)]
print("spearman(metric, relevance)   =",
      round(spearman(metric, relevance), 4))
print("spearman(metric, human score) =", round(spearman(metric, human), 4))

# combining per-dataset correlations the way a two-dataset table is averaged
print("\ncross-dataset average of (0.42, -0.05) =",
      cross_dataset_average([0.42, -0.05]))

# metric-vs-metric structure
series = {
    "intent_f1": metric,
    "rouge_l": [0.2, 0.5, 0.45, 0.9, 0.35, 0.7, 0.1, 0.6],
    "bleu": [0.9, 0.4, 0.5, 0.1, 0.6, 0.3, 0.8, 0.35],
}
names, mat = correlation_matrix(series, method="spearman")
print("\ncorrelation matrix (spearman):")
print("  " + "  ".join(f"{n:>10s}" for n in names))
for name, row in zip(names, mat):
    print(f"{name:>10s} " + "  ".join(f"{v:10.3f}" for v in row))

# two annotators labelling the same documents
ann_a = ["murder", "robbery", "murder", "corruption", "robbery", "murder"]
ann_b = ["murder", "robbery", "murder", "robbery", "robbery", "murder"]
print("\ncohen kappa between annotators =", round(cohen_kappa(ann_a, ann_b), 4))
