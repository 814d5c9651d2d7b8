"""Evaluation of legal document summaries against annotated intent phrases,
with lexical and embedding-based baseline metrics, corpus reports and
metric-versus-human correlation analysis."""

from .corpus import (
    CATEGORIES,
    CategoryStats,
    Document,
    IntentPhraseSet,
    Phrase,
    Sentence,
    SummaryRecord,
    corpus_stats,
    load_abbreviations,
    load_corpus,
    load_documents,
    load_phrase_sets,
    load_summaries,
    make_document,
    normalize,
    segment_sentences,
    tokenize,
    write_documents,
    write_phrases,
    write_summaries,
)
from .intent import (
    CorpusIntentScore,
    IntentScore,
    corpus_intent_average,
    evaluate_intent,
    intent_f1,
    intent_precision,
    intent_recall,
    phrase_match,
)
from .lexical import (
    MetricScore,
    NGramCounts,
    bleu,
    lcs_length,
    meteor,
    ngram_counts,
    rouge_l,
    unigram_match,
)
from .semantic import (
    EmbeddingTable,
    IdfTable,
    bert_score,
    cosine,
    idf_weights,
    load_embeddings,
    smd_similarity,
    write_embeddings,
)
from .stats import (
    ClassificationScores,
    ConfusionMatrix,
    HumanJudgment,
    RankedSeries,
    average_ranks,
    classification_scores,
    cohen_kappa,
    confusion_matrix,
    correlation_matrix,
    cross_dataset_average,
    human_score,
    pearson,
    rank_series,
    spearman,
)
from .report import (
    EvalReport,
    RunConfig,
    evaluate_corpus,
    load_report,
    report_to_csv,
    report_to_json,
    write_report,
)
from .transport import TransportPlan, sinkhorn_solve, transport_solve

__version__ = "0.1.0"
