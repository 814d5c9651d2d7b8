"""Corpus data model: documents, intent phrases, summaries.

Text normalization, rule-based sentence segmentation, JSONL ingestion and
per-category statistics. All types are immutable after construction.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import (
    DanglingReference,
    DuplicateDocumentId,
    EmptyCorpus,
    MalformedRecord,
)

CATEGORIES = ("corruption", "land_dispute", "murder", "robbery")


# ---------------------------------------------------------------------------
# normalization / tokenization


def normalize(text: str) -> str:
    """Canonical token space: lowercase, NFC, punctuation and symbols
    mapped to spaces, whitespace runs collapsed to a single space.

    Idempotent; letters, combining marks and digits are kept so that dates
    and section numbers survive.
    """
    text = unicodedata.normalize("NFC", text.lower())
    kept = [c if unicodedata.category(c)[0] in ("L", "M", "N") else " " for c in text]
    return " ".join("".join(kept).split())


def tokenize(text: str) -> list[str]:
    """Split normalize(text) on spaces; empty text yields no tokens."""
    norm = normalize(text)
    return norm.split(" ") if norm else []


# ---------------------------------------------------------------------------
# sentence segmentation


def _default_abbreviations() -> frozenset[str]:
    data = resources.files("intent_eval").joinpath("data/abbreviations.txt")
    return load_abbreviations_text(data.read_text(encoding="utf-8"))


def load_abbreviations_text(text: str) -> frozenset[str]:
    """Parse an abbreviation list: one entry per line, '#' comments."""
    entries = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            entries.add(line.lower())
    return frozenset(entries)


def load_abbreviations(path: str | Path) -> frozenset[str]:
    return load_abbreviations_text(Path(path).read_text(encoding="utf-8"))


_ABBREVIATIONS: frozenset[str] | None = None


def _abbreviations() -> frozenset[str]:
    global _ABBREVIATIONS
    if _ABBREVIATIONS is None:
        _ABBREVIATIONS = _default_abbreviations()
    return _ABBREVIATIONS


@dataclass(frozen=True)
class Sentence:
    """One sentence of a document or summary.

    char_span holds codepoint offsets into the owning raw text; the text
    field is exactly raw_text[start:end].
    """

    index: int
    text: str
    tokens: tuple[str, ...]
    char_span: tuple[int, int]


# Terminal punctuation run followed by whitespace or end of text.
_TERMINAL_RE = re.compile(r"[.?!]+(?=\s|$)")
# Non-whitespace chunk ending at a period, e.g. "No." or "i.e." or "2015).".
_CHUNK_BEFORE_RE = re.compile(r"(\S+)$")
_SINGLE_INITIAL_RE = re.compile(r"^[^\W\d_]\.$")


def _is_boundary(text: str, end: int, abbreviations: frozenset[str]) -> bool:
    """Decide whether the terminal-punctuation run ending at `end` closes a
    sentence: end of text, or whitespace followed by a capital, with an
    exception list for abbreviations ending in a period."""
    rest = text[end:]
    stripped = rest.lstrip()
    if stripped and not stripped[0].isupper():
        return False
    if text[end - 1] == ".":
        m = _CHUNK_BEFORE_RE.search(text, 0, end)
        if m:
            chunk = m.group(1).lower()
            if chunk in abbreviations or _SINGLE_INITIAL_RE.match(chunk):
                return False
    return True


def segment_sentences(
    raw_text: str, abbreviations: frozenset[str] | None = None
) -> list[Sentence]:
    """Rule-based sentence segmentation.

    Splits after runs of . ? ! that are followed by whitespace and a capital
    letter (or end of text), unless the preceding chunk is a known
    abbreviation or a single initial. Fragments that normalize to zero
    tokens are merged into the neighbouring sentence. Returned spans are
    ordered, disjoint, and jointly cover all non-whitespace text; text with
    no tokenizable content yields an empty list.
    """
    if abbreviations is None:
        abbreviations = _abbreviations()

    first = 0
    while first < len(raw_text) and raw_text[first].isspace():
        first += 1
    if first == len(raw_text):
        return []
    last = len(raw_text)
    while raw_text[last - 1].isspace():
        last -= 1

    cut_points = []
    for m in _TERMINAL_RE.finditer(raw_text):
        if m.end() >= last:
            break
        if _is_boundary(raw_text, m.end(), abbreviations):
            cut_points.append(m.end())

    spans: list[tuple[int, int]] = []
    start = first
    for cut in cut_points:
        spans.append((start, cut))
        start = cut
        while raw_text[start].isspace():
            start += 1
    spans.append((start, last))

    # Merge token-free fragments (e.g. stray punctuation) into a neighbour.
    merged: list[tuple[int, int, list[str]]] = []
    pending_start: int | None = None
    for s, e in spans:
        toks = tokenize(raw_text[s:e])
        if pending_start is not None:
            s = pending_start
            toks = tokenize(raw_text[s:e])
            pending_start = None
        if not toks:
            if merged:
                ps, _, ptoks = merged.pop()
                merged.append((ps, e, ptoks))
            else:
                pending_start = s
            continue
        merged.append((s, e, toks))
    if not merged:
        # nothing in the text tokenizes (e.g. pure punctuation)
        return []

    return [
        Sentence(index=i, text=raw_text[s:e], tokens=tuple(toks), char_span=(s, e))
        for i, (s, e, toks) in enumerate(merged)
    ]


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class Document:
    id: str
    category: str
    raw_text: str
    sentences: tuple[Sentence, ...]

    @property
    def tokens(self) -> list[str]:
        """All tokens of the document in sentence order."""
        out: list[str] = []
        for s in self.sentences:
            out.extend(s.tokens)
        return out


@dataclass(frozen=True)
class Phrase:
    text: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class IntentPhraseSet:
    doc_id: str
    phrases: tuple[Phrase, ...]
    unannotated: bool = False

    def __post_init__(self):
        if not self.phrases and not self.unannotated:
            raise ValueError("empty phrase set must carry the unannotated flag")


@dataclass(frozen=True)
class SummaryRecord:
    doc_id: str
    method: str
    ratio: float
    raw_text: str
    sentences: tuple[Sentence, ...]

    @property
    def tokens(self) -> list[str]:
        out: list[str] = []
        for s in self.sentences:
            out.extend(s.tokens)
        return out


@dataclass(frozen=True)
class CategoryStats:
    category: str
    doc_count: int
    avg_words_per_doc: float
    avg_sentences_per_doc: float
    avg_words_per_intent_phrase: float


# ---------------------------------------------------------------------------
# ingestion


def _iter_jsonl(path: str | Path):
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedRecord(path, line_no, f"invalid JSON: {exc.msg}") from exc
            if not isinstance(obj, dict):
                raise MalformedRecord(path, line_no, "record is not a JSON object")
            yield line_no, obj


def _require(obj: dict, key: str, kind, path, line_no):
    if key not in obj:
        raise MalformedRecord(path, line_no, f'missing "{key}" field')
    value = obj[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise MalformedRecord(path, line_no, f'"{key}" must be a number')
        return float(value)
    if not isinstance(value, kind):
        raise MalformedRecord(path, line_no, f'"{key}" has wrong type')
    return value


def make_document(
    doc_id: str,
    category: str,
    raw_text: str,
    abbreviations: frozenset[str] | None = None,
) -> Document:
    """Build a Document, segmenting raw_text into sentences."""
    if not doc_id:
        raise ValueError("document id must be nonempty")
    if category not in CATEGORIES:
        raise ValueError(f"unknown category {category!r}")
    sentences = segment_sentences(raw_text, abbreviations)
    if not sentences:
        raise ValueError("document has no tokens")
    return Document(id=doc_id, category=category, raw_text=raw_text, sentences=tuple(sentences))


def load_documents(
    documents_path: str | Path, abbreviations: frozenset[str] | None = None
) -> list[Document]:
    """Load and segment the documents JSONL file."""
    documents: list[Document] = []
    by_id: dict[str, Document] = {}
    for line_no, obj in _iter_jsonl(documents_path):
        doc_id = _require(obj, "id", str, documents_path, line_no)
        category = _require(obj, "category", str, documents_path, line_no)
        text = _require(obj, "text", str, documents_path, line_no)
        if not doc_id:
            raise MalformedRecord(documents_path, line_no, "empty document id")
        if category not in CATEGORIES:
            raise MalformedRecord(
                documents_path, line_no, f"unknown category {category!r}"
            )
        if doc_id in by_id:
            raise DuplicateDocumentId(f"duplicate document id {doc_id!r}")
        sentences = segment_sentences(text, abbreviations)
        if not sentences:
            raise MalformedRecord(documents_path, line_no, "document has no tokens")
        doc = Document(id=doc_id, category=category, raw_text=text, sentences=tuple(sentences))
        documents.append(doc)
        by_id[doc_id] = doc
    return documents


def load_phrase_sets(
    phrases_path: str | Path, documents: list[Document]
) -> list[IntentPhraseSet]:
    """Load the phrases JSONL file; every record must reference a document."""
    by_id = {d.id: d for d in documents}
    phrase_sets: list[IntentPhraseSet] = []
    seen_phrase_docs: set[str] = set()
    for line_no, obj in _iter_jsonl(phrases_path):
        doc_id = _require(obj, "doc_id", str, phrases_path, line_no)
        raw_phrases = _require(obj, "phrases", list, phrases_path, line_no)
        if doc_id not in by_id:
            raise DanglingReference(f"phrases for unknown doc_id {doc_id!r}")
        if doc_id in seen_phrase_docs:
            raise MalformedRecord(
                phrases_path, line_no, f"duplicate phrase record for {doc_id!r}"
            )
        seen_phrase_docs.add(doc_id)
        phrases = []
        for p in raw_phrases:
            if not isinstance(p, str):
                raise MalformedRecord(phrases_path, line_no, "phrase is not a string")
            toks = tokenize(p)
            if not toks:
                raise MalformedRecord(phrases_path, line_no, f"phrase {p!r} has no tokens")
            phrases.append(Phrase(text=p, tokens=tuple(toks)))
        phrase_sets.append(
            IntentPhraseSet(
                doc_id=doc_id, phrases=tuple(phrases), unannotated=not phrases
            )
        )
    return phrase_sets


def load_summaries(
    summaries_path: str | Path,
    documents: list[Document],
    abbreviations: frozenset[str] | None = None,
) -> list[SummaryRecord]:
    """Load and segment the summaries JSONL file."""
    by_id = {d.id: d for d in documents}
    summaries: list[SummaryRecord] = []
    seen_keys: set[tuple[str, str, float]] = set()
    for line_no, obj in _iter_jsonl(summaries_path):
        doc_id = _require(obj, "doc_id", str, summaries_path, line_no)
        method = _require(obj, "method", str, summaries_path, line_no)
        ratio = _require(obj, "ratio", float, summaries_path, line_no)
        text = _require(obj, "summary", str, summaries_path, line_no)
        if doc_id not in by_id:
            raise DanglingReference(f"summary for unknown doc_id {doc_id!r}")
        if not method:
            raise MalformedRecord(summaries_path, line_no, "empty method label")
        if not (0.0 < ratio <= 1.0):
            raise MalformedRecord(summaries_path, line_no, f"ratio {ratio} outside (0, 1]")
        key = (doc_id, method, ratio)
        if key in seen_keys:
            raise MalformedRecord(
                summaries_path, line_no, f"duplicate summary key {key!r}"
            )
        seen_keys.add(key)
        sentences = segment_sentences(text, abbreviations)
        summaries.append(
            SummaryRecord(
                doc_id=doc_id,
                method=method,
                ratio=ratio,
                raw_text=text,
                sentences=tuple(sentences),
            )
        )
    return summaries


def load_corpus(
    documents_path: str | Path,
    phrases_path: str | Path,
    summaries_path: str | Path,
    abbreviations: frozenset[str] | None = None,
) -> tuple[list[Document], list[IntentPhraseSet], list[SummaryRecord]]:
    """Load the three JSONL files and cross-validate references.

    Every phrase set and summary must point at a loaded document id;
    duplicate document ids, duplicate phrase records and duplicate
    (doc_id, method, ratio) summary keys are rejected.
    """
    documents = load_documents(documents_path, abbreviations)
    phrase_sets = load_phrase_sets(phrases_path, documents)
    summaries = load_summaries(summaries_path, documents, abbreviations)
    return documents, phrase_sets, summaries


def write_documents(documents: list[Document], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for d in documents:
            fh.write(json.dumps({"id": d.id, "category": d.category, "text": d.raw_text}) + "\n")


def write_phrases(phrase_sets: list[IntentPhraseSet], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for ps in phrase_sets:
            fh.write(
                json.dumps({"doc_id": ps.doc_id, "phrases": [p.text for p in ps.phrases]})
                + "\n"
            )


def write_summaries(summaries: list[SummaryRecord], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for s in summaries:
            fh.write(
                json.dumps(
                    {
                        "doc_id": s.doc_id,
                        "method": s.method,
                        "ratio": s.ratio,
                        "summary": s.raw_text,
                    }
                )
                + "\n"
            )


# ---------------------------------------------------------------------------
# statistics


def corpus_stats(
    documents: list[Document], phrase_sets: list[IntentPhraseSet]
) -> dict[str, CategoryStats]:
    """Per-category document counts and token/sentence/phrase-length
    averages. Categories with no documents get a zero-count row."""
    if not documents:
        raise EmptyCorpus("no documents")
    phrases_by_doc = {ps.doc_id: ps for ps in phrase_sets}
    stats: dict[str, CategoryStats] = {}
    for cat in CATEGORIES:
        docs = [d for d in documents if d.category == cat]
        if not docs:
            stats[cat] = CategoryStats(cat, 0, 0.0, 0.0, 0.0)
            continue
        words = [len(d.tokens) for d in docs]
        sents = [len(d.sentences) for d in docs]
        phrase_lens: list[int] = []
        for d in docs:
            ps = phrases_by_doc.get(d.id)
            if ps is not None:
                phrase_lens.extend(len(p.tokens) for p in ps.phrases)
        stats[cat] = CategoryStats(
            category=cat,
            doc_count=len(docs),
            avg_words_per_doc=sum(words) / len(docs),
            avg_sentences_per_doc=sum(sents) / len(docs),
            avg_words_per_intent_phrase=(
                sum(phrase_lens) / len(phrase_lens) if phrase_lens else 0.0
            ),
        )
    return stats
