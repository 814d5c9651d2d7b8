"""Correlation, agreement and classification scoring.

Rank correlation uses average ranks for ties. All functions are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DegenerateMarginals,
    DegenerateSeries,
    DomainError,
    EmptyList,
    LengthMismatch,
)


@dataclass(frozen=True)
class RankedSeries:
    values: tuple[float, ...]
    ranks: tuple[float, ...]


@dataclass(frozen=True)
class HumanJudgment:
    """One annotator's 1-5 Likert ratings for a (document, method) pair."""

    doc_id: str
    method: str
    annotator_id: str
    relevance: int
    readability: int

    def __post_init__(self):
        for name, v in (("relevance", self.relevance),
                        ("readability", self.readability)):
            if isinstance(v, bool) or not isinstance(v, int) or not 1 <= v <= 5:
                raise DomainError(f"{name} must be an integer in 1..5, got {v!r}")

    @property
    def human_score(self) -> float:
        return human_score(self.relevance, self.readability)


@dataclass(frozen=True)
class ConfusionMatrix:
    labels: tuple[str, ...]
    counts: np.ndarray  # square, counts[i][j] = #(a == labels[i], b == labels[j])


@dataclass(frozen=True)
class ClassificationScores:
    accuracy: float
    macro_f1: float
    per_class: dict[str, dict[str, float]]
    confusion: ConfusionMatrix


def average_ranks(values: Sequence[float]) -> np.ndarray:
    """1-based ranks, tied groups replaced by their mean rank."""
    arr = np.asarray(values, dtype=float)
    order = np.argsort(arr, kind="stable")
    ranks = np.empty(arr.size, dtype=float)
    i = 0
    while i < arr.size:
        j = i
        while j + 1 < arr.size and arr[order[j + 1]] == arr[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def rank_series(values: Sequence[float]) -> RankedSeries:
    return RankedSeries(
        values=tuple(float(v) for v in values),
        ranks=tuple(average_ranks(values).tolist()),
    )


def _check_pair(x, y, min_len=2):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size != y.size:
        raise LengthMismatch(f"series lengths differ: {x.size} vs {y.size}")
    if x.size < min_len:
        raise LengthMismatch(f"need at least {min_len} points, got {x.size}")
    return x, y


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Linear correlation coefficient, clipped into [-1, 1]."""
    x, y = _check_pair(x, y)
    dx = x - x.mean()
    dy = y - y.mean()
    vx = float(np.dot(dx, dx))
    vy = float(np.dot(dy, dy))
    if vx == 0.0 or vy == 0.0:
        raise DegenerateSeries("constant series has no defined correlation")
    # sqrt of the product (not product of sqrts) keeps r(x, x) exactly 1
    return float(np.clip(np.dot(dx, dy) / np.sqrt(vx * vy), -1.0, 1.0))


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Rank correlation: Pearson on average ranks."""
    x, y = _check_pair(x, y)
    return pearson(average_ranks(x), average_ranks(y))


def correlation_matrix(
    series: dict[str, Sequence[float]], method: str = "pearson"
) -> tuple[tuple[str, ...], np.ndarray]:
    """Pairwise correlation with exact symmetry and a unit diagonal."""
    if method not in ("pearson", "spearman"):
        raise DomainError(f"unknown correlation method {method!r}")
    names = tuple(series.keys())
    lengths = {len(series[n]) for n in names}
    if len(lengths) > 1:
        raise LengthMismatch(f"series lengths differ: {sorted(lengths)}")
    corr = pearson if method == "pearson" else spearman
    k = len(names)
    mat = np.eye(k)
    for a in range(k):
        for b in range(a + 1, k):
            r = corr(series[names[a]], series[names[b]])
            mat[a, b] = r
            mat[b, a] = r
    return names, mat


def confusion_matrix(
    a: Sequence[str], b: Sequence[str], labels: Sequence[str] | None = None
) -> ConfusionMatrix:
    if len(a) != len(b):
        raise LengthMismatch(f"label lists differ: {len(a)} vs {len(b)}")
    if len(a) == 0:
        raise EmptyList("no labels")
    if labels is None:
        labels = sorted(set(a) | set(b))
    index = {lab: i for i, lab in enumerate(labels)}
    counts = np.zeros((len(labels), len(labels)), dtype=int)
    for x, y in zip(a, b):
        counts[index[x], index[y]] += 1
    return ConfusionMatrix(labels=tuple(labels), counts=counts)


def cohen_kappa(a: Sequence[str], b: Sequence[str]) -> float:
    """Chance-corrected agreement between two annotators."""
    cm = confusion_matrix(a, b)
    n = cm.counts.sum()
    p_o = float(np.trace(cm.counts)) / n
    row = cm.counts.sum(axis=1) / n
    col = cm.counts.sum(axis=0) / n
    p_e = float(np.dot(row, col))
    if p_e == 1.0:
        if p_o == 1.0:
            return 1.0
        raise DegenerateMarginals("expected agreement is 1 with disagreements present")
    return (p_o - p_e) / (1.0 - p_e)


def human_score(relevance: float, readability: float) -> float:
    """Composite judgment: mean of the two Likert ratings (each in [1, 5])."""
    for name, v in (("relevance", relevance), ("readability", readability)):
        if not (1.0 <= v <= 5.0):
            raise DomainError(f"{name} {v} outside [1, 5]")
    return (relevance + readability) / 2.0


def cross_dataset_average(values: Sequence[float]) -> float:
    """Arithmetic mean of per-dataset correlations."""
    if not values:
        raise EmptyList("nothing to average")
    return math.fsum(values) / len(values)


def classification_scores(
    pred: Sequence[str], gold: Sequence[str], labels: Sequence[str] | None = None
) -> ClassificationScores:
    """Accuracy, per-class precision/recall/F1 and macro F1.

    Classes absent from both pred and gold are excluded from the macro
    mean; a class with zero precision+recall contributes F1 = 0.
    """
    cm = confusion_matrix(pred, gold, labels)
    n = int(cm.counts.sum())
    accuracy = float(np.trace(cm.counts)) / n
    per_class: dict[str, dict[str, float]] = {}
    f1s: list[float] = []
    for i, lab in enumerate(cm.labels):
        pred_count = int(cm.counts[i, :].sum())
        gold_count = int(cm.counts[:, i].sum())
        if pred_count == 0 and gold_count == 0:
            continue
        tp = int(cm.counts[i, i])
        p = tp / pred_count if pred_count else 0.0
        r = tp / gold_count if gold_count else 0.0
        f1 = 2.0 * p * r / (p + r) if p + r else 0.0
        per_class[lab] = {"precision": p, "recall": r, "f1": f1}
        f1s.append(f1)
    return ClassificationScores(
        accuracy=accuracy,
        macro_f1=sum(f1s) / len(f1s),
        per_class=per_class,
        confusion=cm,
    )
