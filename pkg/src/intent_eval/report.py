"""Corpus evaluation runs and report files.

evaluate_corpus scores every summary against its document with the enabled
metrics and aggregates per (method, ratio). Reports are written as JSON
(machine) and CSV (table-shaped, scores in percent) with stable ordering
and fixed formatting so identical inputs produce identical bytes.
"""

from __future__ import annotations

import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .corpus import load_abbreviations, load_corpus
from .errors import ConfigError, IntentEvalError
from .intent import evaluate_intent, intent_f1
from .lexical import bleu, meteor, rouge_l
from .semantic import (
    MISSING_POLICIES,
    SMD_KINDS,
    bert_score,
    idf_weights,
    load_embeddings,
    smd_similarity,
)

SCHEMA_VERSION = "intent-eval-report/1"

KNOWN_METRICS = ("intent", "bleu", "meteor", "rouge_l", "bert_score", "swms")
SEMANTIC_METRICS = ("bert_score", "swms")

# CSV/JSON column order per enabled metric
_METRIC_COLUMNS = {
    "intent": ("intent_precision", "intent_recall", "intent_f1"),
    "bleu": ("bleu",),
    "meteor": ("meteor",),
    "rouge_l": ("rouge_l",),
    "bert_score": ("bert_score",),
    "swms": ("swms",),
}

_CONVENTIONS = {
    "bleu_smoothing": "zero higher-order precisions become 1/(2*denominator)",
    "meteor_parameters": "alpha=0.9 beta=3 gamma=0.5, exact-match stage only",
    "rouge_l_granularity": "document-level LCS over concatenated tokens",
    "bert_score_range": "[-1, 1], no baseline rescaling, idf from reference corpus",
    "swms_similarity": "exp(-transport distance), Euclidean ground metric",
    "f1_convention": "harmonic mean, 0 when precision+recall is 0",
    "score_units": "JSON fractions in [0,1]; CSV percentages",
}


@dataclass(frozen=True)
class RunConfig:
    documents: Path
    phrases: Path
    summaries: Path
    output_dir: Path
    embeddings: Path | None = None
    abbreviations: Path | None = None
    metrics: tuple[str, ...] = ("intent", "bleu", "meteor", "rouge_l")
    ratios: tuple[float, ...] | None = None
    solver: str = "exact"
    swms_kind: str = "s+wms"
    missing_tokens: str = "error"
    seed: int = 0
    dataset_tag: str | None = None

    def validate(self) -> "RunConfig":
        if not self.metrics:
            raise ConfigError("at least one metric must be enabled")
        unknown = [m for m in self.metrics if m not in KNOWN_METRICS]
        if unknown:
            raise ConfigError(f"unknown metrics: {unknown}")
        if self.ratios is not None:
            if not self.ratios:
                raise ConfigError("ratios list may not be empty")
            bad = [r for r in self.ratios if not (0.0 < r <= 1.0)]
            if bad:
                raise ConfigError(f"ratios outside (0, 1]: {bad}")
        semantic = [m for m in self.metrics if m in SEMANTIC_METRICS]
        if semantic and self.embeddings is None:
            raise ConfigError(
                f"metrics {semantic} need an embeddings file but none was configured"
            )
        if self.solver not in ("exact", "sinkhorn"):
            raise ConfigError(f"unknown solver {self.solver!r}")
        if self.swms_kind not in SMD_KINDS:
            raise ConfigError(f"unknown swms kind {self.swms_kind!r}")
        if self.missing_tokens not in MISSING_POLICIES:
            raise ConfigError(f"unknown missing-token policy {self.missing_tokens!r}")
        return self

    @property
    def tag(self) -> str:
        return self.dataset_tag if self.dataset_tag is not None else self.documents.stem

    @classmethod
    def from_toml(cls, path: str | Path) -> "RunConfig":
        try:
            import tomllib
        except ModuleNotFoundError:  # Python 3.10
            import tomli as tomllib
        path = Path(path)
        try:
            data = tomllib.loads(path.read_text(encoding="utf-8"))
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
        base = path.parent

        def take(section: dict, key: str, required=False):
            if key not in section:
                if required:
                    raise ConfigError(f"{path}: missing {key!r}")
                return None
            return section.pop(key)

        def resolve(p):
            return None if p is None else (base / p)

        corpus_sec = dict(data.pop("corpus", {}))
        eval_sec = dict(data.pop("evaluation", {}))
        out_sec = dict(data.pop("output", {}))
        if data:
            raise ConfigError(f"{path}: unknown sections {sorted(data)}")

        cfg = cls(
            documents=resolve(take(corpus_sec, "documents", required=True)),
            phrases=resolve(take(corpus_sec, "phrases", required=True)),
            summaries=resolve(take(corpus_sec, "summaries", required=True)),
            abbreviations=resolve(take(corpus_sec, "abbreviations")),
            dataset_tag=take(corpus_sec, "dataset_tag"),
            embeddings=resolve(take(eval_sec, "embeddings")),
            metrics=tuple(take(eval_sec, "metrics") or ("intent", "bleu", "meteor", "rouge_l")),
            ratios=(lambda r: tuple(float(x) for x in r) if r is not None else None)(
                take(eval_sec, "ratios")
            ),
            solver=take(eval_sec, "solver") or "exact",
            swms_kind=take(eval_sec, "swms_kind") or "s+wms",
            missing_tokens=take(eval_sec, "missing_tokens") or "error",
            seed=int(take(eval_sec, "seed") or 0),
            output_dir=resolve(take(out_sec, "dir", required=True)),
        )
        for name, sec in (("corpus", corpus_sec), ("evaluation", eval_sec), ("output", out_sec)):
            if sec:
                raise ConfigError(f"{path}: unknown keys in [{name}]: {sorted(sec)}")
        return cfg.validate()


@dataclass(frozen=True)
class ScoreRow:
    doc_id: str
    method: str
    ratio: float
    scores: dict  # column -> float | None
    flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class AverageRow:
    method: str
    ratio: float
    scores: dict
    n_documents: int
    n_intent_documents: int = 0
    intent_f1_from_averages: float | None = None


@dataclass(frozen=True)
class EvalReport:
    metadata: dict
    rows: list[ScoreRow]
    averages: list[AverageRow]

    @property
    def columns(self) -> list[str]:
        return list(self.metadata["metric_columns"])


def _columns_for(metrics) -> list[str]:
    cols: list[str] = []
    for m in KNOWN_METRICS:
        if m in metrics:
            cols.extend(_METRIC_COLUMNS[m])
    return cols


def _score_one(summary, doc, phrase_set, config, table, idf):
    """Score a single summary; metric failures become 0.0 plus a flag,
    unannotated documents leave intent columns empty."""
    scores: dict = {}
    flags: list[str] = []
    cand_tokens = summary.tokens
    ref_tokens = doc.tokens

    def attempt(cols, fn):
        try:
            fn()
        except IntentEvalError as exc:
            for col in cols:
                scores[col] = 0.0
            flags.append(f"{cols[0]}:{exc.code}")

    if "intent" in config.metrics:
        if phrase_set is None or phrase_set.unannotated:
            scores.update(
                {"intent_precision": None, "intent_recall": None, "intent_f1": None}
            )
            flags.append("intent:unannotated")
        else:
            def run_intent():
                s = evaluate_intent(phrase_set, summary)
                scores.update(
                    {
                        "intent_precision": s.precision,
                        "intent_recall": s.recall,
                        "intent_f1": s.f1,
                    }
                )

            attempt(("intent_precision", "intent_recall", "intent_f1"), run_intent)
    if "bleu" in config.metrics:
        attempt(("bleu",), lambda: scores.__setitem__("bleu", bleu(cand_tokens, ref_tokens).value))
    if "meteor" in config.metrics:
        attempt(("meteor",), lambda: scores.__setitem__("meteor", meteor(cand_tokens, ref_tokens).value))
    if "rouge_l" in config.metrics:
        attempt(("rouge_l",), lambda: scores.__setitem__("rouge_l", rouge_l(cand_tokens, ref_tokens).value))
    if "bert_score" in config.metrics:
        attempt(
            ("bert_score",),
            lambda: scores.__setitem__(
                "bert_score",
                bert_score(cand_tokens, ref_tokens, table, idf, missing=config.missing_tokens).value,
            ),
        )
    if "swms" in config.metrics:
        attempt(
            ("swms",),
            lambda: scores.__setitem__(
                "swms",
                smd_similarity(
                    summary.sentences,
                    doc.sentences,
                    table,
                    kind=config.swms_kind,
                    missing=config.missing_tokens,
                    solver=config.solver,
                ).value,
            ),
        )
    return ScoreRow(
        doc_id=summary.doc_id,
        method=summary.method,
        ratio=summary.ratio,
        scores=scores,
        flags=tuple(flags),
    )


def evaluate_corpus(config: RunConfig) -> EvalReport:
    config.validate()
    abbreviations = (
        load_abbreviations(config.abbreviations) if config.abbreviations else None
    )
    documents, phrase_sets, summaries = load_corpus(
        config.documents, config.phrases, config.summaries, abbreviations
    )
    docs_by_id = {d.id: d for d in documents}
    phrases_by_doc = {ps.doc_id: ps for ps in phrase_sets}
    if config.ratios is not None:
        wanted = set(config.ratios)
        summaries = [s for s in summaries if s.ratio in wanted]
    summaries = sorted(summaries, key=lambda s: (s.doc_id, s.method, s.ratio))

    table = idf = None
    if any(m in SEMANTIC_METRICS for m in config.metrics):
        table = load_embeddings(config.embeddings)
        if table.kind != "token":
            raise ConfigError(
                f"embeddings file {config.embeddings} has kind {table.kind!r}, need 'token'"
            )
        if "bert_score" in config.metrics:
            idf = idf_weights(documents)

    max_workers = int(os.environ.get("INTENT_EVAL_THREADS", "0")) or min(
        8, os.cpu_count() or 1
    )
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        rows = list(
            pool.map(
                lambda s: _score_one(
                    s, docs_by_id[s.doc_id], phrases_by_doc.get(s.doc_id), config, table, idf
                ),
                summaries,
            )
        )
    for row in rows:
        for flag in row.flags:
            print(
                f"warning: {row.doc_id}/{row.method}/{row.ratio}: {flag}",
                file=sys.stderr,
            )

    columns = _columns_for(config.metrics)
    averages = _aggregate(rows, columns)
    metadata = {
        "schema_version": SCHEMA_VERSION,
        "dataset_tag": config.tag,
        "metric_columns": columns,
        "conventions": dict(_CONVENTIONS),
        "solver": config.solver,
        "config": {
            "documents": str(config.documents),
            "phrases": str(config.phrases),
            "summaries": str(config.summaries),
            "embeddings": None if config.embeddings is None else str(config.embeddings),
            "abbreviations": None
            if config.abbreviations is None
            else str(config.abbreviations),
            "metrics": list(config.metrics),
            "ratios": None if config.ratios is None else list(config.ratios),
            "swms_kind": config.swms_kind,
            "missing_tokens": config.missing_tokens,
            "seed": config.seed,
        },
    }
    return EvalReport(metadata=metadata, rows=rows, averages=averages)


def _aggregate(rows, columns) -> list[AverageRow]:
    groups: dict[tuple[str, float], list[ScoreRow]] = {}
    for row in rows:
        groups.setdefault((row.method, row.ratio), []).append(row)
    out = []
    for (method, ratio) in sorted(groups):
        members = groups[(method, ratio)]
        scores: dict = {}
        for col in columns:
            vals = [r.scores[col] for r in members if r.scores.get(col) is not None]
            scores[col] = sum(vals) / len(vals) if vals else None
        n_intent = sum(
            1 for r in members if r.scores.get("intent_f1") is not None
        )
        f1_alt = None
        if scores.get("intent_precision") is not None:
            f1_alt = intent_f1(scores["intent_precision"], scores["intent_recall"])
        out.append(
            AverageRow(
                method=method,
                ratio=ratio,
                scores=scores,
                n_documents=len(members),
                n_intent_documents=n_intent,
                intent_f1_from_averages=f1_alt,
            )
        )
    return out


# ---------------------------------------------------------------------------
# serialization


def _atomic_write(path: Path, data: str) -> None:
    tmp = path.with_name(path.name + f".tmp{os.getpid()}")
    tmp.write_text(data, encoding="utf-8", newline="\n")
    os.replace(tmp, path)


def _fmt_pct(value) -> str:
    return "" if value is None else f"{100.0 * value:.4f}"


def report_to_json(report: EvalReport) -> str:
    doc = {
        "metadata": report.metadata,
        "rows": [
            {
                "doc_id": r.doc_id,
                "method": r.method,
                "ratio": r.ratio,
                "scores": r.scores,
                "flags": list(r.flags),
            }
            for r in report.rows
        ],
        "averages": [
            {
                "method": a.method,
                "ratio": a.ratio,
                "scores": a.scores,
                "n_documents": a.n_documents,
                "n_intent_documents": a.n_intent_documents,
                "intent_f1_from_averages": a.intent_f1_from_averages,
            }
            for a in report.averages
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def report_to_csv(report: EvalReport) -> str:
    columns = report.columns
    has_intent = "intent_f1" in columns
    header = ["doc_id", "method", "ratio"] + columns + ["flags"]
    if has_intent:
        header.append("intent_f1_from_averages")
    lines = [",".join(header)]
    for r in report.rows:
        cells = [r.doc_id, r.method, str(r.ratio)]
        cells += [_fmt_pct(r.scores.get(c)) for c in columns]
        cells.append(";".join(r.flags))
        if has_intent:
            cells.append("")
        lines.append(",".join(cells))
    for a in report.averages:
        cells = ["AVERAGE", a.method, str(a.ratio)]
        cells += [_fmt_pct(a.scores.get(c)) for c in columns]
        cells.append(f"n={a.n_documents}")
        if has_intent:
            cells.append(_fmt_pct(a.intent_f1_from_averages))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_report(report: EvalReport, out_dir: str | Path) -> tuple[Path, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    json_path = out_dir / "report.json"
    csv_path = out_dir / "report.csv"
    _atomic_write(json_path, report_to_json(report))
    _atomic_write(csv_path, report_to_csv(report))
    return json_path, csv_path


def load_report(path: str | Path) -> EvalReport:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not a report JSON: {exc.msg}") from exc
    meta = doc.get("metadata", {})
    if meta.get("schema_version") != SCHEMA_VERSION:
        raise ConfigError(
            f"{path}: unsupported schema {meta.get('schema_version')!r}"
        )
    rows = [
        ScoreRow(
            doc_id=r["doc_id"],
            method=r["method"],
            ratio=float(r["ratio"]),
            scores=r["scores"],
            flags=tuple(r.get("flags", ())),
        )
        for r in doc["rows"]
    ]
    averages = [
        AverageRow(
            method=a["method"],
            ratio=float(a["ratio"]),
            scores=a["scores"],
            n_documents=int(a["n_documents"]),
            n_intent_documents=int(a.get("n_intent_documents", 0)),
            intent_f1_from_averages=a.get("intent_f1_from_averages"),
        )
        for a in doc["averages"]
    ]
    return EvalReport(metadata=meta, rows=rows, averages=averages)
