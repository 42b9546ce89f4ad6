from .config import LexGraphSettings, load_settings, settings_from_dict
from .metrics import (
    ConfusionCounts,
    EvalReport,
    bleu_n,
    confusion_metrics,
    evaluate_pairs,
    lcs_length,
    rouge_l,
    rouge_n,
)
from .pipeline import (
    REPORT_SCHEMA,
    QueryReport,
    RunConfig,
    match_params,
    run_queries,
    run_query,
    serialize_report,
)
from .runtime import CorpusSummary, Runtime, ingest_corpus, load_runtime

__all__ = [
    "REPORT_SCHEMA",
    "ConfusionCounts",
    "CorpusSummary",
    "EvalReport",
    "LexGraphSettings",
    "QueryReport",
    "RunConfig",
    "Runtime",
    "bleu_n",
    "confusion_metrics",
    "evaluate_pairs",
    "ingest_corpus",
    "lcs_length",
    "load_runtime",
    "load_settings",
    "match_params",
    "rouge_l",
    "rouge_n",
    "run_queries",
    "run_query",
    "serialize_report",
    "settings_from_dict",
]
