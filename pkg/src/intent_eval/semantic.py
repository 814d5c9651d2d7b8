"""Embedding-based metrics: greedy soft token matching with IDF weighting,
and mover similarity between word/sentence point clouds.

Embeddings are always loaded from files (see the embedding file format in
load_embeddings); nothing here runs a neural encoder.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .corpus import Document, Sentence
from .errors import (
    DimensionMismatch,
    DomainError,
    DuplicateKey,
    EmptyCorpus,
    EmptyInput,
    MissingEmbedding,
    ParseError,
)
from .lexical import MetricScore
from .transport import sinkhorn_solve, transport_solve

UNKNOWN_KEY = "<unk>"
MISSING_POLICIES = ("error", "skip", "unknown")
SMD_KINDS = ("wms", "sms", "s+wms")


@dataclass(frozen=True)
class EmbeddingTable:
    dim: int
    kind: str
    entries: dict[str, np.ndarray]


@dataclass(frozen=True)
class IdfTable:
    weights: dict[str, float]
    default_weight: float

    def weight(self, token: str) -> float:
        return self.weights.get(token, self.default_weight)

    @classmethod
    def uniform(cls) -> "IdfTable":
        return cls(weights={}, default_weight=1.0)


# ---------------------------------------------------------------------------
# embedding file I/O
#
# line 1: header JSON {"dim": int, "kind": "token"|"sentence", "count": int}
# lines 2..: key<TAB>f1 f2 ... f_dim  (shortest round-trip decimals)


def load_embeddings(path: str | Path) -> EmbeddingTable:
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        header_line = fh.readline()
        if not header_line.strip():
            raise ParseError(f"{path}:1: missing header line")
        try:
            header = json.loads(header_line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}:1: invalid header JSON: {exc.msg}") from exc
        if not isinstance(header, dict):
            raise ParseError(f"{path}:1: header is not a JSON object")
        dim = header.get("dim")
        kind = header.get("kind")
        count = header.get("count")
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise ParseError(f"{path}:1: bad dim {dim!r}")
        if kind not in ("token", "sentence"):
            raise ParseError(f"{path}:1: bad kind {kind!r}")
        if not isinstance(count, int) or isinstance(count, bool) or count < 0:
            raise ParseError(f"{path}:1: bad count {count!r}")

        entries: dict[str, np.ndarray] = {}
        for line_no, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            key, sep, rest = line.partition("\t")
            if not sep or not key:
                raise ParseError(f"{path}:{line_no}: expected key<TAB>floats")
            parts = rest.split(" ")
            try:
                vec = np.array([float(p) for p in parts], dtype=float)
            except ValueError as exc:
                raise ParseError(f"{path}:{line_no}: bad float: {exc}") from exc
            if vec.size != dim:
                raise DimensionMismatch(
                    f"{path}:{line_no}: expected {dim} components, got {vec.size}"
                )
            if not np.all(np.isfinite(vec)):
                raise ParseError(f"{path}:{line_no}: non-finite component")
            if key in entries:
                raise DuplicateKey(f"{path}:{line_no}: duplicate key {key!r}")
            vec.flags.writeable = False
            entries[key] = vec
    if len(entries) != count:
        raise ParseError(
            f"{path}: header count {count} != {len(entries)} entries"
        )
    return EmbeddingTable(dim=dim, kind=kind, entries=entries)


def write_embeddings(table: EmbeddingTable, path: str | Path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(
            json.dumps({"dim": table.dim, "kind": table.kind, "count": len(table.entries)})
            + "\n"
        )
        for key, vec in table.entries.items():
            fh.write(key + "\t" + " ".join(repr(float(x)) for x in vec) + "\n")


# ---------------------------------------------------------------------------
# similarity primitives


def cosine(u, v) -> float:
    """Cosine similarity; a zero vector against anything is 0."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise DimensionMismatch(f"vector dims {u.shape} vs {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


def idf_weights(documents: Sequence[Document]) -> IdfTable:
    """Document-frequency based weights: ln((1+D)/(1+df)); tokens never
    seen get ln(1+D)."""
    if not documents:
        raise EmptyCorpus("idf needs a nonempty corpus")
    d = len(documents)
    df: Counter = Counter()
    for doc in documents:
        df.update(set(doc.tokens))
    weights = {t: math.log((1 + d) / (1 + c)) for t, c in df.items()}
    return IdfTable(weights=weights, default_weight=math.log(1 + d))


def _resolve(tokens, table: EmbeddingTable, missing: str):
    if missing not in MISSING_POLICIES:
        raise DomainError(f"unknown missing-token policy {missing!r}")
    kept: list[str] = []
    vecs: list[np.ndarray] = []
    for t in tokens:
        vec = table.entries.get(t)
        if vec is None:
            if missing == "error":
                raise MissingEmbedding(f"no embedding for token {t!r}")
            if missing == "skip":
                continue
            vec = table.entries.get(UNKNOWN_KEY)
            if vec is None:
                raise MissingEmbedding(
                    f"no embedding for token {t!r} and no {UNKNOWN_KEY!r} vector"
                )
        kept.append(t)
        vecs.append(vec)
    return kept, vecs


def _unit_rows(vecs: list[np.ndarray]) -> np.ndarray:
    mat = np.stack(vecs)
    norms = np.linalg.norm(mat, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    return mat / norms


def bert_score(
    cand_tokens: Sequence[str],
    ref_tokens: Sequence[str],
    table: EmbeddingTable,
    idf: IdfTable,
    missing: str = "error",
) -> MetricScore:
    """IDF-weighted greedy soft matching.

    Recall: each reference token takes its best cosine against the
    candidate, averaged with IDF weights; precision mirrors with roles
    swapped; value is the harmonic mean. Ranges over [-1, 1]; no baseline
    rescaling. A side whose IDF weights sum to zero falls back to uniform
    weighting.
    """
    if not cand_tokens or not ref_tokens:
        raise EmptyInput("bert_score needs nonempty token lists")
    cand, cand_vecs = _resolve(cand_tokens, table, missing)
    ref, ref_vecs = _resolve(ref_tokens, table, missing)
    if not cand or not ref:
        raise EmptyInput("all tokens were skipped; nothing to score")
    sims = _unit_rows(cand_vecs) @ _unit_rows(ref_vecs).T

    def weighted(best: np.ndarray, tokens: list[str]) -> float:
        w = np.array([idf.weight(t) for t in tokens])
        total = float(w.sum())
        if total == 0.0:
            return float(best.mean())
        return float(np.dot(w, best) / total)

    p = weighted(sims.max(axis=1), cand)
    r = weighted(sims.max(axis=0), ref)
    f1 = 2.0 * p * r / (p + r) if p + r != 0.0 else 0.0
    return MetricScore(f1, {"precision": p, "recall": r, "f1": f1})


# ---------------------------------------------------------------------------
# mover similarity


def _word_cloud(sentences, table, missing):
    counts: Counter = Counter()
    for s in sentences:
        counts.update(s.tokens)
    kept, vecs = _resolve(list(counts.keys()), table, missing)
    weights = [counts[t] for t in kept]
    return [np.asarray(v, dtype=float) for v in vecs], [float(w) for w in weights]


def _sentence_cloud(sentences, table, missing):
    points: list[np.ndarray] = []
    weights: list[float] = []
    for s in sentences:
        kept, vecs = _resolve(s.tokens, table, missing)
        if not kept:
            continue
        points.append(np.mean(np.stack(vecs), axis=0))
        weights.append(float(len(s.tokens)))
    return points, weights


def _build_cloud(sentences, table, missing, kind):
    points: list[np.ndarray] = []
    weights: list[float] = []
    if kind in ("wms", "s+wms"):
        p, w = _word_cloud(sentences, table, missing)
        points.extend(p)
        weights.extend(w)
    if kind in ("sms", "s+wms"):
        p, w = _sentence_cloud(sentences, table, missing)
        points.extend(p)
        weights.extend(w)
    if not points:
        raise EmptyInput("no embeddable content for mover similarity")
    mass = np.array(weights)
    return np.stack(points), mass / mass.sum()


def smd_similarity(
    cand_sentences: Sequence[Sentence],
    ref_sentences: Sequence[Sentence],
    word_table: EmbeddingTable,
    kind: str = "s+wms",
    missing: str = "error",
    solver: str = "exact",
) -> MetricScore:
    """Mover similarity between two texts as exp(-transport distance).

    Point clouds per `kind`: word vectors weighted by frequency ("wms"),
    sentence mean-vectors weighted by token count ("sms"), or the union of
    both ("s+wms"); masses are normalized to 1 and moved under a Euclidean
    ground metric.
    """
    if kind not in SMD_KINDS:
        raise DomainError(f"kind must be one of {SMD_KINDS}, got {kind!r}")
    if solver not in ("exact", "sinkhorn"):
        raise DomainError(f"solver must be 'exact' or 'sinkhorn', got {solver!r}")
    if not cand_sentences or not ref_sentences:
        raise EmptyInput("mover similarity needs nonempty sentence lists")
    cand_pts, cand_mass = _build_cloud(cand_sentences, word_table, missing, kind)
    ref_pts, ref_mass = _build_cloud(ref_sentences, word_table, missing, kind)
    diff = cand_pts[:, None, :] - ref_pts[None, :, :]
    ground = np.sqrt(np.sum(diff * diff, axis=2))
    solve = transport_solve if solver == "exact" else sinkhorn_solve
    plan = solve(ground, cand_mass, ref_mass)
    distance = plan.cost
    return MetricScore(
        math.exp(-distance),
        {
            "distance": distance,
            "candidate_points": float(len(cand_pts)),
            "reference_points": float(len(ref_pts)),
        },
    )
