"""Embedding file export.

Output format (shared contract with the evaluation toolkit):
  line 1   JSON header {"dim": int, "kind": "token"|"sentence", "count": int}
  lines 2+ key<TAB>f1 f2 ... f_dim   (shortest round-trip decimals)

Token kind emits one vector per distinct normalized token, pooled over its
occurrences; sentence kind emits one vector per sentence under the key
`docid#sentidx`. Re-export over the same corpus and model is
byte-deterministic.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .encoders import make_encoder
from .textprep import read_corpus

KINDS = ("token", "sentence")
POOLINGS = ("mean", "first")


@dataclass(frozen=True)
class ExportJob:
    corpus: Path
    model: str
    output: Path
    kind: str = "token"
    pooling: str = "mean"

    def validate(self) -> "ExportJob":
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.pooling not in POOLINGS:
            raise ValueError(
                f"pooling must be one of {POOLINGS}, got {self.pooling!r}"
            )
        return self


def _pool(vectors: list[np.ndarray], pooling: str) -> np.ndarray:
    if pooling == "first":
        return np.asarray(vectors[0], dtype=float)
    return np.mean(np.stack(vectors), axis=0)


def export_embeddings(job: ExportJob) -> Path:
    """Encode the corpus and write the embedding file; returns the path."""
    job.validate()
    encoder = make_encoder(job.model)
    documents = read_corpus(job.corpus)

    entries: list[tuple[str, np.ndarray]] = []
    uncovered: set[str] = set()
    if job.kind == "token":
        occurrences: dict[str, list[np.ndarray]] = {}
        for doc in documents:
            for _, tokens in doc.sentences:
                vectors, missed = encoder.encode_sentence(tokens)
                uncovered |= missed
                for tok, vec in zip(tokens, vectors):
                    occurrences.setdefault(tok, []).append(vec)
        for tok in sorted(occurrences):
            entries.append((tok, _pool(occurrences[tok], job.pooling)))
    else:
        for doc in documents:
            for idx, (_, tokens) in enumerate(doc.sentences):
                vectors, missed = encoder.encode_sentence(tokens)
                uncovered |= missed
                entries.append((f"{doc.id}#{idx}", _pool(vectors, job.pooling)))

    if uncovered:
        print(
            "warning: encoder has no representation for "
            f"{len(uncovered)} token(s): {' '.join(sorted(uncovered))}",
            file=sys.stderr,
        )

    out = Path(job.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    tmp = out.with_name(out.name + f".tmp{os.getpid()}")
    with tmp.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(
            json.dumps({"dim": encoder.dim, "kind": job.kind, "count": len(entries)})
            + "\n"
        )
        for key, vec in entries:
            fh.write(key + "\t" + " ".join(repr(float(x)) for x in vec) + "\n")
    os.replace(tmp, out)
    return out
