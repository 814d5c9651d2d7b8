"""Lexical overlap metrics over token lists: BLEU, METEOR, ROUGE-L.

Candidate = summary tokens, reference = original document tokens; all
scores land in [0, 1]. Implementations are self-contained; no stemming or
synonym stages anywhere.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DomainError, EmptyInput, EmptyReference

Tokens = Sequence[str]


@dataclass(frozen=True)
class NGramCounts:
    n: int
    counts: Counter = field(default_factory=Counter)

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class MetricScore:
    value: float
    components: dict


def ngram_counts(tokens: Tokens, n: int) -> NGramCounts:
    """Multiset of contiguous n-grams; shorter-than-n input gives none."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    counts = Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))
    return NGramCounts(n=n, counts=counts)


# ---------------------------------------------------------------------------
# BLEU


def bleu(candidate: Tokens, reference: Tokens, max_n: int = 4) -> MetricScore:
    """Geometric mean of clipped n-gram precisions (n = 1..max_n) times a
    brevity penalty min(1, exp(1 - |ref|/|cand|)).

    Zero unigram overlap scores 0. A zero higher-order precision (or a
    candidate too short to have n-grams) is smoothed to 1/(2*denominator)
    so partial matches are not collapsed by log(0).
    """
    if not reference:
        raise EmptyReference("reference has no tokens")
    components: dict = {
        "candidate_length": float(len(candidate)),
        "reference_length": float(len(reference)),
        "brevity_penalty": 0.0,
        "smoothed_orders": 0.0,
    }
    for n in range(1, max_n + 1):
        components[f"p{n}"] = 0.0
    if not candidate:
        return MetricScore(0.0, components)

    bp = min(1.0, math.exp(1.0 - len(reference) / len(candidate)))
    components["brevity_penalty"] = bp

    ref_counts = [ngram_counts(reference, n).counts for n in range(1, max_n + 1)]
    log_sum = 0.0
    for n in range(1, max_n + 1):
        cand = ngram_counts(candidate, n).counts
        den = max(0, len(candidate) - n + 1)
        num = sum(min(c, ref_counts[n - 1][g]) for g, c in cand.items())
        if n == 1 and num == 0:
            return MetricScore(0.0, components)
        if num == 0 or den == 0:
            p = 1.0 / (2.0 * max(den, 1))
            components["smoothed_orders"] += 1.0
        else:
            p = num / den
        components[f"p{n}"] = p
        log_sum += math.log(p)
    return MetricScore(bp * math.exp(log_sum / max_n), components)


# ---------------------------------------------------------------------------
# METEOR


_ALPHA = 0.9
_BETA = 3.0
_GAMMA = 0.5
# Exact minimum-chunk search is exponential in the worst case; beyond this
# per-side length a greedy longest-common-block cover is used instead (it
# always reaches the maximum match count, only the chunk count may exceed
# the true minimum on adversarial inputs).
_EXACT_CHUNK_LIMIT = 12


def _min_chunks_exact(cand_ids: list[int], ref_ids: list[int]) -> int:
    """Minimum chunk count over all maximum exact-match alignments.

    Memoized search maximizing (matches, adjacent pairs) lexicographically;
    chunks = matches - adjacent pairs.
    """
    if len(ref_ids) > len(cand_ids):
        cand_ids, ref_ids = ref_ids, cand_ids
    match_pos = [
        tuple(j for j, t in enumerate(ref_ids) if t == c) for c in cand_ids
    ]

    @lru_cache(maxsize=None)
    def best(i: int, mask: int, prev_j: int) -> tuple[int, int]:
        if i == len(cand_ids):
            return (0, 0)
        best_val = best(i + 1, mask, -1)
        for j in match_pos[i]:
            bit = 1 << j
            if mask & bit:
                continue
            m2, a2 = best(i + 1, mask | bit, j)
            adj = 1 if prev_j >= 0 and j == prev_j + 1 else 0
            val = (m2 + 1, a2 + adj)
            if val > best_val:
                best_val = val
        return best_val

    matches, adjacent = best(0, 0, -1)
    best.cache_clear()
    return matches - adjacent


def _min_chunks_greedy(cand_ids: list[int], ref_ids: list[int]) -> int:
    """Greedy chunk cover: repeatedly take the longest common block of
    still-unmatched positions; once only single-token blocks remain, each
    remaining matched token is its own chunk."""
    c = np.asarray(cand_ids, dtype=np.int64)
    r = np.asarray(ref_ids, dtype=np.int64)
    cand_free = np.ones(len(c), dtype=bool)
    ref_free = np.ones(len(r), dtype=bool)
    chunks = 0
    while True:
        eq = (c[:, None] == r[None, :]) & cand_free[:, None] & ref_free[None, :]
        if not eq.any():
            break
        best_len, best_i, best_j = 0, -1, -1
        prev = np.zeros(len(r), dtype=np.int32)
        for i in range(len(c)):
            row = eq[i].astype(np.int32)
            row[1:] += np.where(eq[i][1:], prev[:-1], 0)
            mx = int(row.max())
            if mx > best_len:
                best_len, best_i, best_j = mx, i, int(row.argmax())
            prev = row
        if best_len == 1:
            cc = Counter(c[cand_free].tolist())
            rc = Counter(r[ref_free].tolist())
            chunks += sum((cc & rc).values())
            break
        cand_free[best_i - best_len + 1 : best_i + 1] = False
        ref_free[best_j - best_len + 1 : best_j + 1] = False
        chunks += 1
    return chunks


def _min_chunks(candidate: Tokens, reference: Tokens) -> int:
    ids: dict[str, int] = {}
    cand_ids = [ids.setdefault(t, len(ids)) for t in candidate]
    ref_ids = [ids.setdefault(t, len(ids)) for t in reference]
    if max(len(cand_ids), len(ref_ids)) <= _EXACT_CHUNK_LIMIT:
        return _min_chunks_exact(cand_ids, ref_ids)
    return _min_chunks_greedy(cand_ids, ref_ids)


def meteor(candidate: Tokens, reference: Tokens) -> MetricScore:
    """Unigram F-mean with a fragmentation penalty.

    m exact unigram matches, aligned to maximize matches then minimize
    chunks; P = m/|cand|, R = m/|ref|, F = P*R/(0.9P + 0.1R), penalty
    0.5*(chunks/m)^3, score F*(1 - penalty); 0 when nothing matches.
    """
    if not candidate or not reference:
        raise EmptyInput("meteor needs nonempty candidate and reference")
    m = sum((Counter(candidate) & Counter(reference)).values())
    if m == 0:
        return MetricScore(
            0.0,
            {"matches": 0.0, "chunks": 0.0, "precision": 0.0, "recall": 0.0,
             "f_mean": 0.0, "penalty": 0.0},
        )
    chunks = _min_chunks(candidate, reference)
    p = m / len(candidate)
    r = m / len(reference)
    f_mean = p * r / (_ALPHA * p + (1.0 - _ALPHA) * r)
    penalty = _GAMMA * (chunks / m) ** _BETA
    return MetricScore(
        f_mean * (1.0 - penalty),
        {"matches": float(m), "chunks": float(chunks), "precision": p,
         "recall": r, "f_mean": f_mean, "penalty": penalty},
    )


# ---------------------------------------------------------------------------
# ROUGE-L


def lcs_length(a: Tokens, b: Tokens) -> int:
    """Longest common subsequence length (bit-parallel row DP)."""
    if not a or not b:
        return 0
    mask: dict[str, int] = {}
    for j, tok in enumerate(b):
        mask[tok] = mask.get(tok, 0) | (1 << j)
    full = (1 << len(b)) - 1
    v = full
    for tok in a:
        m = mask.get(tok, 0)
        u = v & m
        v = ((v + u) | (v - u)) & full
    return len(b) - bin(v).count("1")


def rouge_l(candidate: Tokens, reference: Tokens) -> MetricScore:
    """LCS-based F1, computed document-level on the full token lists."""
    if not candidate or not reference:
        raise EmptyInput("rouge_l needs nonempty candidate and reference")
    lcs = lcs_length(candidate, reference)
    p = lcs / len(candidate)
    r = lcs / len(reference)
    f1 = 2.0 * p * r / (p + r) if lcs else 0.0
    return MetricScore(
        f1,
        {"lcs": float(lcs), "precision": p, "recall": r, "document_level": 1.0},
    )


# ---------------------------------------------------------------------------
# exact-match unigram overlap (shared oracle surface for embedding metrics)


def unigram_match(candidate: Tokens, reference: Tokens) -> MetricScore:
    """Per-occurrence exact-match overlap: precision is the fraction of
    candidate tokens whose type occurs in the reference, recall the
    mirror image."""
    if not candidate or not reference:
        raise EmptyInput("unigram_match needs nonempty candidate and reference")
    ref_types = set(reference)
    cand_types = set(candidate)
    p = sum(1 for t in candidate if t in ref_types) / len(candidate)
    r = sum(1 for t in reference if t in cand_types) / len(reference)
    f1 = 2.0 * p * r / (p + r) if p + r else 0.0
    return MetricScore(f1, {"precision": p, "recall": r, "f1": f1})
