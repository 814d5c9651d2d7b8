"""Text preparation matching the evaluation toolkit's token contract.

Embedding files are keyed by normalized tokens (token kind) or by
`docid#sentidx` (sentence kind), so normalization and sentence
segmentation here must agree exactly with the consumer. The rules:
lowercase, Unicode NFC, non letter/mark/number characters become spaces,
whitespace collapses; sentences split after runs of . ? ! followed by
whitespace and a capital (or end of text) unless the preceding chunk is a
known abbreviation or a single initial. Parity is enforced by the
integration tests.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass
from importlib import resources
from pathlib import Path


class MalformedCorpus(Exception):
    pass


def normalize(text: str) -> str:
    text = unicodedata.normalize("NFC", text.lower())
    kept = [c if unicodedata.category(c)[0] in ("L", "M", "N") else " " for c in text]
    return " ".join("".join(kept).split())


def tokenize(text: str) -> list[str]:
    norm = normalize(text)
    return norm.split(" ") if norm else []


def _load_abbreviations() -> frozenset[str]:
    data = resources.files("embed_export").joinpath("data/abbreviations.txt")
    entries = set()
    for line in data.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            entries.add(line.lower())
    return frozenset(entries)


_ABBREVIATIONS: frozenset[str] | None = None


def _abbreviations() -> frozenset[str]:
    global _ABBREVIATIONS
    if _ABBREVIATIONS is None:
        _ABBREVIATIONS = _load_abbreviations()
    return _ABBREVIATIONS


_TERMINAL_RE = re.compile(r"[.?!]+(?=\s|$)")
_CHUNK_BEFORE_RE = re.compile(r"(\S+)$")
_SINGLE_INITIAL_RE = re.compile(r"^[^\W\d_]\.$")


def _is_boundary(text: str, end: int, abbreviations: frozenset[str]) -> bool:
    rest = text[end:].lstrip()
    if rest and not rest[0].isupper():
        return False
    if text[end - 1] == ".":
        m = _CHUNK_BEFORE_RE.search(text, 0, end)
        if m:
            chunk = m.group(1).lower()
            if chunk in abbreviations or _SINGLE_INITIAL_RE.match(chunk):
                return False
    return True


def split_sentences(raw_text: str) -> list[tuple[str, list[str]]]:
    """(sentence text, tokens) pairs; token-free fragments merge into a
    neighbour, token-free text yields nothing."""
    abbreviations = _abbreviations()
    first = 0
    while first < len(raw_text) and raw_text[first].isspace():
        first += 1
    if first == len(raw_text):
        return []
    last = len(raw_text)
    while raw_text[last - 1].isspace():
        last -= 1

    cuts = []
    for m in _TERMINAL_RE.finditer(raw_text):
        if m.end() >= last:
            break
        if _is_boundary(raw_text, m.end(), abbreviations):
            cuts.append(m.end())

    spans = []
    start = first
    for cut in cuts:
        spans.append((start, cut))
        start = cut
        while raw_text[start].isspace():
            start += 1
    spans.append((start, last))

    merged: list[tuple[int, int, list[str]]] = []
    pending_start = None
    for s, e in spans:
        if pending_start is not None:
            s = pending_start
            pending_start = None
        toks = tokenize(raw_text[s:e])
        if not toks:
            if merged:
                ps, _, ptoks = merged.pop()
                merged.append((ps, e, ptoks))
            else:
                pending_start = s
            continue
        merged.append((s, e, toks))
    return [(raw_text[s:e], toks) for s, e, toks in merged]


@dataclass(frozen=True)
class CorpusDocument:
    id: str
    text: str
    sentences: list[tuple[str, list[str]]]


def read_corpus(path: str | Path) -> list[CorpusDocument]:
    """Documents JSONL: {"id", "category", "text"}; text is segmented."""
    path = Path(path)
    documents = []
    seen = set()
    with path.open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedCorpus(f"{path}:{line_no}: invalid JSON: {exc.msg}")
            if not isinstance(obj, dict):
                raise MalformedCorpus(f"{path}:{line_no}: record is not an object")
            for key in ("id", "category", "text"):
                if not isinstance(obj.get(key), str) or not obj.get(key):
                    raise MalformedCorpus(
                        f"{path}:{line_no}: missing or invalid {key!r} field"
                    )
            if obj["id"] in seen:
                raise MalformedCorpus(f"{path}:{line_no}: duplicate id {obj['id']!r}")
            seen.add(obj["id"])
            documents.append(
                CorpusDocument(
                    id=obj["id"],
                    text=obj["text"],
                    sentences=split_sentences(obj["text"]),
                )
            )
    return documents
