"""
End-to-end query pipeline: analysis, retrieval, background ranking,
optional search fusion, template selection, prompt assembly, then
generation under the quality loop.
"""

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import date
from typing import Any, Iterable, Optional, Sequence

from langchain_core.language_models.chat_models import BaseChatModel
from loguru import logger
from tqdm import tqdm

from ..errors import ParameterError
from ..freshness_search import search_knowledge
from ..prompt_engine import (
    BackgroundEntry,
    PromptDocument,
    RunMode,
    TaskTemplate,
    Toggle,
    assemble_prompt,
    extract_features,
    graph_background,
    resolve_toggles,
    select_task_template,
)
from ..quality_loop import OptimizationResult, QualityReport, assess_quality, optimize
from ..relevance import rank_background
from ..retrieval import (
    EmbeddingTermSimilarity,
    FusionWeights,
    MatchParams,
    Query,
    RetrievalResult,
    build_query,
    retrieve,
)
from .runtime import Runtime

REPORT_SCHEMA = "lexgraph.report/1"
TERM_MATCH_ONLY = FusionWeights(cm=0.0, vs=0.0, pi=0.0, tm=1.0)


@dataclass(frozen=True)
class RunConfig:
    """Mode plus the components switched off with ``--disable``; parameters come from the runtime settings."""

    mode: RunMode = RunMode.COMPLETE
    disabled: frozenset[Toggle] = field(default_factory=frozenset)

    @property
    def toggles(self) -> frozenset[Toggle]:
        return resolve_toggles(self.mode, self.disabled)

    @classmethod
    def parse(cls, mode: str, disable: Optional[str] = None) -> "RunConfig":
        try:
            run_mode = RunMode(mode.lower())
        except ValueError:
            raise ParameterError(
                f"unknown mode {mode!r}; expected {', '.join(m.value for m in RunMode)}"
            ) from None
        return cls(mode=run_mode, disabled=Toggle.parse_list(disable) if disable else frozenset())


def match_params(base: MatchParams, run_cfg: RunConfig) -> MatchParams:
    """
    Traditional mode scores by term matching alone. In complete mode a
    disabled LCM or SVM component zeroes the code-match or vector weight
    and renormalizes the rest.
    """
    if run_cfg.mode == RunMode.TRADITIONAL:
        return base.with_fusion(TERM_MATCH_ONLY)
    dropped = []
    if Toggle.LCM not in run_cfg.toggles:
        dropped.append("cm")
    if Toggle.SVM not in run_cfg.toggles:
        dropped.append("vs")
    return base.without(dropped) if dropped else base


@dataclass(frozen=True)
class QueryReport:
    query: str
    run: RunConfig
    prompt: PromptDocument
    result: OptimizationResult
    retrieval: tuple[RetrievalResult, ...] = ()
    fusion_weights: Optional[FusionWeights] = None
    template: Optional[TaskTemplate] = None
    template_score: Optional[float] = None
    timing_ms: float = 0.0

    @property
    def response(self) -> str:
        return self.result.response

    @property
    def quality(self) -> QualityReport:
        return self.result.report

    def as_dict(self) -> dict[str, Any]:
        final_prompt = self.result.prompt
        return {
            "schema": REPORT_SCHEMA,
            "query": self.query,
            "mode": self.run.mode.value,
            "toggles": sorted(t.value for t in self.run.toggles),
            "disabled": sorted(t.value for t in self.run.disabled),
            "fusion_weights": (
                self.fusion_weights.model_dump() if self.fusion_weights is not None else None
            ),
            "template": (
                {"id": self.template.id, "score": self.template_score}
                if self.template is not None
                else None
            ),
            "retrieval": [
                {"concept_id": r.concept, "rank": r.rank, "scores": r.scores.as_dict()}
                for r in self.retrieval
            ],
            "background": [_entry_dict(e) for e in final_prompt.knowledge_background],
            "prompt": final_prompt.render(),
            "applied_adjustments": list(final_prompt.applied_adjustments),
            "response": self.response,
            "quality": self.quality.as_dict(),
            "iterations": [
                {
                    "iteration": record.iteration,
                    "total": record.report.total,
                    "verdict": "pass" if record.report.verdict else "fail",
                    "applied_adjustments": list(record.applied_adjustments),
                }
                for record in self.result.trace
            ],
            "best_iteration": self.result.best_iteration,
            "provider_calls": self.result.provider_calls,
            "timing_ms": self.timing_ms,
        }


def _entry_dict(entry: BackgroundEntry) -> dict[str, Any]:
    return {
        "code": entry.code,
        "concept_id": entry.concept_id,
        "provenance": entry.provenance,
        "authority": entry.authority,
        "relevance": entry.breakdown.as_dict() if entry.breakdown is not None else None,
    }


class _BackgroundBuilder:
    """Retrieval plus relevance ranking for a background of a given size, memoized per size."""

    def __init__(self, runtime: Runtime, q: Query, params: MatchParams, use_search: bool) -> None:
        self.runtime = runtime
        self.q = q
        self.params = params
        self.use_search = use_search
        self.sem = EmbeddingTermSimilarity(runtime.embeddings)
        self._retrieved: dict[int, list[RetrievalResult]] = {}

    def retrieved(self, k: int) -> list[RetrievalResult]:
        if k not in self._retrieved:
            settings = self.runtime.settings.retrieval
            self._retrieved[k] = retrieve(
                self.runtime.graph,
                self.q,
                self.runtime.stats,
                self.params,
                k,
                self.sem,
                settings.exclude_superseded,
            )
        return self._retrieved[k]

    def __call__(self, size: int) -> list[BackgroundEntry]:
        settings = self.runtime.settings
        results = self.retrieved(max(settings.retrieval.k, size))
        ranked = rank_background(
            self.runtime.graph, self.q, [r.concept for r in results], settings.relevance, size
        )
        entries = graph_background(self.runtime.graph, ranked)
        if self.use_search and self.runtime.search_client is not None:
            entries = search_knowledge(
                self.runtime.search_client,
                self.q.text,
                entries,
                self.runtime.graph,
                settings.search.as_of or date.today(),
                settings.search.jurisdiction,
                settings.search,
            )
        return entries


def run_query(
    text: str,
    runtime: Runtime,
    run_cfg: RunConfig,
    provider: Optional[BaseChatModel] = None,
) -> QueryReport:
    """
    Raises:
        ParameterError: for an empty query.
        ProviderError: when the completion provider fails.
    """
    if not text or not text.strip():
        raise ParameterError("empty query")
    started = time.perf_counter()
    settings = runtime.settings
    toggles = run_cfg.toggles
    g = runtime.graph
    q = build_query(text, g, runtime.embeddings, settings.query.jurisdictions)
    logger.info(
        f"Query {text[:60]!r}: mode={run_cfg.mode.value}, "
        f"toggles={sorted(t.value for t in toggles)}, concepts={sorted(q.concept_ids)}"
    )

    retrieved: list[RetrievalResult] = []
    fusion: Optional[FusionWeights] = None
    background: list[BackgroundEntry] = []
    builder: Optional[_BackgroundBuilder] = None
    if Toggle.KB in toggles:
        params = match_params(settings.retrieval, run_cfg)
        fusion = params.fusion_weights
        builder = _BackgroundBuilder(
            runtime, q, params, use_search=run_cfg.mode == RunMode.COMPLETE and settings.search.enabled
        )
        background = builder(settings.relevance.background_size)
        retrieved = builder.retrieved(settings.retrieval.k)

    template: Optional[TaskTemplate] = None
    template_score: Optional[float] = None
    if Toggle.TD in toggles or Toggle.RG in toggles:
        features = extract_features(q, runtime.templates, runtime.lexicon)
        template, template_score = select_task_template(features, runtime.templates)

    prompt = assemble_prompt(q, template, background, run_cfg.mode, toggles).evolve(
        template_score=template_score
    )

    def assessor(response: str, document: PromptDocument) -> QualityReport:
        return assess_quality(
            response, document, g, settings.quality, runtime.embeddings, runtime.lexicon_tokens
        )

    result = optimize(
        prompt,
        provider or runtime.make_provider(),
        assessor,
        settings.quality,
        expander=builder,
        dynamic=Toggle.DO in toggles,
    )
    elapsed = (time.perf_counter() - started) * 1000.0
    logger.info(
        f"Query finished in {elapsed:.1f} ms: {result.provider_calls} provider call(s), "
        f"verdict={'pass' if result.report.verdict else 'fail'}"
    )
    return QueryReport(
        query=text,
        run=run_cfg,
        prompt=prompt,
        result=result,
        retrieval=tuple(retrieved),
        fusion_weights=fusion,
        template=template,
        template_score=template_score,
        timing_ms=round(elapsed, 3),
    )


def run_queries(
    texts: Sequence[str], runtime: Runtime, run_cfg: RunConfig, jobs: int = 1
) -> list[QueryReport]:
    """Independent queries over the shared runtime, each with its own provider and session."""
    if jobs < 1:
        raise ParameterError(f"jobs must be >= 1, got {jobs}")
    if jobs == 1 or len(texts) <= 1:
        return [run_query(t, runtime, run_cfg) for t in tqdm(texts, disable=len(texts) <= 1)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(run_query, t, runtime, run_cfg) for t in texts]
        return [f.result() for f in tqdm(futures, total=len(futures), desc="queries")]


def serialize_report(report: QueryReport) -> str:
    return json.dumps(report.as_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize_reports(reports: Iterable[QueryReport]) -> str:
    items = [r.as_dict() for r in reports]
    document: Any = items[0] if len(items) == 1 else items
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
