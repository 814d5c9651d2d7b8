"""Command-line interface.

    intent-eval evaluate  --config run.toml
    intent-eval correlate --report report.json --judgments human.jsonl [...]
    intent-eval stats     --corpus documents.jsonl [--phrases phrases.jsonl]
    intent-eval matrix    --report report.json

Errors exit nonzero with a single line `error[CODE]: message` on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import corpus_stats, load_documents, load_phrase_sets
from .errors import (
    ConfigError,
    DomainError,
    InsufficientData,
    IntentEvalError,
    MalformedRecord,
    MissingScore,
)
from .report import (
    EvalReport,
    RunConfig,
    evaluate_corpus,
    load_report,
    write_report,
    _atomic_write,
)
from .stats import (
    HumanJudgment,
    correlation_matrix,
    cross_dataset_average,
    spearman,
)


def _read_judgments(path: Path) -> list[HumanJudgment]:
    records = []
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
            try:
                records.append(
                    HumanJudgment(
                        doc_id=obj["doc_id"],
                        method=obj["method"],
                        annotator_id=obj["annotator_id"],
                        relevance=obj["relevance"],
                        readability=obj["readability"],
                    )
                )
            except KeyError as exc:
                raise MalformedRecord(path, line_no, f"missing {exc.args[0]!r} field") from exc
            except DomainError as exc:
                raise MalformedRecord(path, line_no, str(exc)) from exc
    return records


def _metric_series_by_pair(report: EvalReport, column: str):
    """Mean metric value per (doc_id, method), averaged across ratios;
    pairs where the metric is absent (e.g. unannotated) are omitted."""
    acc: dict[tuple[str, str], list[float]] = {}
    for row in report.rows:
        v = row.scores.get(column)
        if v is None:
            continue
        acc.setdefault((row.doc_id, row.method), []).append(v)
    return {k: sum(v) / len(v) for k, v in acc.items()}


def _correlate_one(report: EvalReport, judgments: list[HumanJudgment]):
    """Per-metric Spearman against Relevance and Human Score, averaged over
    annotators, plus unaveraged per-annotator variants."""
    report_pairs = {(r.doc_id, r.method) for r in report.rows}
    judged: dict[tuple[str, str], list[HumanJudgment]] = {}
    for j in judgments:
        if (j.doc_id, j.method) not in report_pairs:
            raise MissingScore(
                f"judged pair ({j.doc_id!r}, {j.method!r}) has no scores in the report"
            )
        judged.setdefault((j.doc_id, j.method), []).append(j)

    pairs = sorted(judged)
    rel_avg = {
        k: sum(j.relevance for j in judged[k]) / len(judged[k]) for k in pairs
    }
    human_avg = {
        k: sum(j.human_score for j in judged[k]) / len(judged[k]) for k in pairs
    }

    out: dict[str, dict[str, float]] = {}
    for column in report.columns:
        by_pair = _metric_series_by_pair(report, column)
        keep = [k for k in pairs if k in by_pair]
        metric_vals = [by_pair[k] for k in keep]
        row = {
            "relevance": spearman(metric_vals, [rel_avg[k] for k in keep]),
            "human_score": spearman(metric_vals, [human_avg[k] for k in keep]),
        }
        # unaveraged: one point per (doc, method, annotator)
        xs, rels, humans = [], [], []
        for k in keep:
            for j in judged[k]:
                xs.append(by_pair[k])
                rels.append(float(j.relevance))
                humans.append(j.human_score)
        row["relevance_per_annotator"] = spearman(xs, rels)
        row["human_score_per_annotator"] = spearman(xs, humans)
        out[column] = row
    return out


def cmd_correlate(report_paths, judgment_paths, out_dir: Path) -> Path:
    if len(report_paths) != len(judgment_paths):
        raise ConfigError("--report and --judgments must be given in pairs")
    datasets = []
    for rp, jp in zip(report_paths, judgment_paths):
        report = load_report(Path(rp))
        judgments = _read_judgments(Path(jp))
        tag = report.metadata.get("dataset_tag", Path(rp).stem)
        datasets.append((tag, report, _correlate_one(report, judgments)))

    metrics = list(datasets[0][1].columns)
    for _, report, _ in datasets[1:]:
        if list(report.columns) != metrics:
            raise ConfigError("reports have different metric columns")

    kinds = ("relevance", "human_score", "relevance_per_annotator",
             "human_score_per_annotator")
    header = ["metric"]
    for tag, _, _ in datasets:
        header += [f"{tag}_{k}" for k in kinds]
    header += ["avg_relevance", "avg_human_score"]
    lines = [",".join(header)]
    for metric in metrics:
        cells = [metric]
        for _, _, table in datasets:
            cells += [f"{table[metric][k]:.6f}" for k in kinds]
        cells.append(
            f"{cross_dataset_average([t[metric]['relevance'] for _, _, t in datasets]):.6f}"
        )
        cells.append(
            f"{cross_dataset_average([t[metric]['human_score'] for _, _, t in datasets]):.6f}"
        )
        lines.append(",".join(cells))
    out_dir.mkdir(parents=True, exist_ok=True)
    out = out_dir / "correlation_vs_human.csv"
    _atomic_write(out, "\n".join(lines) + "\n")
    return out


def cmd_stats(corpus_path: Path, phrases_path: Path | None) -> str:
    """Table of per-category corpus statistics (averages rounded to the
    nearest integer for presentation)."""
    documents = load_documents(corpus_path)
    phrase_sets = (
        load_phrase_sets(phrases_path, documents) if phrases_path is not None else []
    )
    stats = corpus_stats(documents, phrase_sets)
    lines = [
        "category,doc_count,avg_words_per_doc,avg_sentences_per_doc,avg_words_per_intent_phrase"
    ]
    for cat, st in stats.items():
        lines.append(
            f"{cat},{st.doc_count},{round(st.avg_words_per_doc)},"
            f"{round(st.avg_sentences_per_doc)},{round(st.avg_words_per_intent_phrase)}"
        )
    return "\n".join(lines) + "\n"


def cmd_matrix(report_path: Path, out_dir: Path, method: str = "pearson"):
    report = load_report(report_path)
    columns = report.columns
    if len(columns) < 2:
        raise InsufficientData("correlation matrix needs at least 2 metrics")
    rows = [
        r for r in report.rows if all(r.scores.get(c) is not None for c in columns)
    ]
    if len({r.doc_id for r in rows}) < 3:
        raise InsufficientData(
            "correlation matrix needs complete scores on at least 3 documents"
        )
    rows.sort(key=lambda r: (r.doc_id, r.method, r.ratio))
    series = {c: [r.scores[c] for r in rows] for c in columns}
    names, mat = correlation_matrix(series, method=method)

    csv_lines = ["metric," + ",".join(names)]
    for i, name in enumerate(names):
        csv_lines.append(name + "," + ",".join(f"{v:.6f}" for v in mat[i]))
    tsv_lines = ["metric_a\tmetric_b\tcorrelation"]
    for i, a in enumerate(names):
        for j, b in enumerate(names):
            tsv_lines.append(f"{a}\t{b}\t{mat[i, j]:.6f}")

    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "metric_correlation_matrix.csv"
    tsv_path = out_dir / "metric_correlation_matrix_long.tsv"
    _atomic_write(csv_path, "\n".join(csv_lines) + "\n")
    _atomic_write(tsv_path, "\n".join(tsv_lines) + "\n")
    return csv_path, tsv_path


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intent-eval",
        description="Evaluate document summaries against annotated intent phrases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("evaluate", help="score a corpus of summaries")
    p_eval.add_argument("--config", required=True, help="TOML run configuration")

    p_corr = sub.add_parser("correlate", help="Spearman of metrics vs human judgments")
    p_corr.add_argument("--report", action="append", required=True,
                        help="report.json (repeat per dataset)")
    p_corr.add_argument("--judgments", action="append", required=True,
                        help="judgments JSONL (paired with --report)")
    p_corr.add_argument("--out", default=".", help="output directory")

    p_stats = sub.add_parser("stats", help="per-category corpus statistics")
    p_stats.add_argument("--corpus", required=True, help="documents JSONL")
    p_stats.add_argument("--phrases", default=None, help="phrases JSONL (optional)")
    p_stats.add_argument("--out", default=None, help="write CSV here instead of stdout")

    p_matrix = sub.add_parser("matrix", help="metric-vs-metric correlation matrix")
    p_matrix.add_argument("--report", required=True, help="report.json")
    p_matrix.add_argument("--method", default="pearson",
                          choices=("pearson", "spearman"))
    p_matrix.add_argument("--out", default=".", help="output directory")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "evaluate":
            config = RunConfig.from_toml(args.config)
            report = evaluate_corpus(config)
            json_path, csv_path = write_report(report, config.output_dir)
            print(f"wrote {json_path} and {csv_path}")
        elif args.command == "correlate":
            out = cmd_correlate(
                args.report, args.judgments, Path(args.out)
            )
            print(f"wrote {out}")
        elif args.command == "stats":
            csv_text = cmd_stats(
                Path(args.corpus), None if args.phrases is None else Path(args.phrases)
            )
            if args.out:
                _atomic_write(Path(args.out), csv_text)
                print(f"wrote {args.out}")
            else:
                sys.stdout.write(csv_text)
        elif args.command == "matrix":
            csv_path, tsv_path = cmd_matrix(
                Path(args.report), Path(args.out), args.method
            )
            print(f"wrote {csv_path} and {tsv_path}")
    except IntentEvalError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error[IO_ERROR]: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
