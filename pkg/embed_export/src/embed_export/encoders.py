"""Text encoders behind embedding export.

Model ids of the form "hash-<dim>" select a deterministic hashed
random-projection featurizer: every token gets a fixed vector seeded by
its bytes, independent of context. Useful offline and for tests.

Any other id is treated as a Hugging Face model name; token vectors are
contextual (subword states mean-pooled per word occurrence). Requires the
optional torch/transformers dependencies.
"""

from __future__ import annotations

import hashlib
import re

import numpy as np


class ModelLoadError(Exception):
    pass


_HASH_RE = re.compile(r"^hash-(\d+)$")


class HashEncoder:
    """Context-free featurizer: blake2b(token) seeds a normal vector."""

    def __init__(self, dim: int):
        if dim < 1:
            raise ModelLoadError(f"hash encoder dim must be >= 1, got {dim}")
        self.dim = dim

    def _vector(self, token: str) -> np.ndarray:
        seed = int.from_bytes(
            hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest(), "big"
        )
        return np.random.default_rng(seed).standard_normal(self.dim)

    def encode_sentence(self, tokens: list[str]):
        """Per-occurrence vectors and the (empty) uncovered-token set."""
        return [self._vector(t) for t in tokens], set()


class HFEncoder:
    """Contextual encoder over a pretrained transformer (eval mode)."""

    def __init__(self, model_name: str):
        try:
            import torch
            from transformers import AutoModel, AutoTokenizer
        except ImportError as exc:
            raise ModelLoadError(
                f"model {model_name!r} needs the optional torch/transformers "
                f"dependencies: {exc}"
            ) from exc
        try:
            self._tokenizer = AutoTokenizer.from_pretrained(model_name)
            self._model = AutoModel.from_pretrained(model_name)
        except Exception as exc:
            raise ModelLoadError(f"cannot load model {model_name!r}: {exc}") from exc
        self._model.eval()
        self._torch = torch
        torch.manual_seed(0)
        self.dim = int(self._model.config.hidden_size)

    def encode_sentence(self, tokens: list[str]):
        torch = self._torch
        enc = self._tokenizer(
            tokens,
            is_split_into_words=True,
            return_tensors="pt",
            truncation=True,
        )
        with torch.no_grad():
            states = self._model(**enc).last_hidden_state[0]
        word_ids = enc.word_ids(0)
        unk_id = self._tokenizer.unk_token_id
        input_ids = enc["input_ids"][0].tolist()
        buckets: dict[int, list] = {}
        covered: set[int] = set()
        for pos, wid in enumerate(word_ids):
            if wid is None:
                continue
            buckets.setdefault(wid, []).append(states[pos])
            if unk_id is None or input_ids[pos] != unk_id:
                covered.add(wid)
        vectors = []
        uncovered = set()
        for i, tok in enumerate(tokens):
            if i in buckets:
                vectors.append(
                    torch.stack(buckets[i]).mean(dim=0).numpy().astype(float)
                )
                if i not in covered:
                    uncovered.add(tok)
            else:
                vectors.append(np.zeros(self.dim))
                uncovered.add(tok)
        return vectors, uncovered


def make_encoder(model: str):
    m = _HASH_RE.match(model)
    if m:
        return HashEncoder(int(m.group(1)))
    return HFEncoder(model)
