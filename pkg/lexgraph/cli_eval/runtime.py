"""
Loaded corpus shared, read-only, by every query of a process.
"""

from dataclasses import dataclass, replace
from functools import cached_property
from pathlib import Path
from typing import Optional, Union

from langchain_core.embeddings import Embeddings
from langchain_core.language_models.chat_models import BaseChatModel
from loguru import logger

from ..errors import ConfigError, GraphLoadError
from ..freshness_search import FixtureSearchClient, HttpSearchClient, SearchClient
from ..kg_core import KnowledgeGraph, load_graph
from ..prompt_engine import TemplateSet, load_templates
from ..quality_loop import HttpChatModel, ScriptedChatModel, load_mock_script, ollama_chat_model
from ..retrieval import GraphCentroidEmbeddings, TermStats, lexicon, lexicon_tokens, load_term_stats
from .config import LexGraphSettings

PathLike = Union[str, Path]


@dataclass(frozen=True)
class CorpusSummary:
    concepts: int
    relations: int
    avgdl: float
    embedding_dim: Optional[int]
    terms: int
    lexicon_terms: int
    templates: int
    dimensions: int

    def lines(self) -> list[str]:
        return [
            f"N={self.concepts} concepts, {self.relations} relations, avgdl={self.avgdl:.4f}",
            f"embedding dimension: {self.embedding_dim if self.embedding_dim else 'none'}",
            f"term statistics: {self.terms} terms, {self.lexicon_terms} professional (ILT > 0)",
            f"task templates: {self.templates} over {self.dimensions} feature dimensions",
        ]


@dataclass(frozen=True)
class Runtime:
    graph: KnowledgeGraph
    stats: TermStats
    templates: TemplateSet
    settings: LexGraphSettings
    embeddings: Optional[Embeddings] = None
    search_client: Optional[SearchClient] = None
    mock_script: tuple[str, ...] = ()

    @cached_property
    def lexicon(self) -> frozenset[str]:
        return lexicon(self.stats)

    @cached_property
    def lexicon_tokens(self) -> frozenset[str]:
        return lexicon_tokens(self.stats)

    def summary(self) -> CorpusSummary:
        return CorpusSummary(
            concepts=self.graph.doc_count,
            relations=len(self.graph.relations),
            avgdl=self.graph.avgdl,
            embedding_dim=self.graph.embedding_dim,
            terms=len(self.stats.entries),
            lexicon_terms=len(self.lexicon),
            templates=len(self.templates.templates),
            dimensions=len(self.templates.dimensions),
        )

    def make_provider(self) -> BaseChatModel:
        """A fresh provider per query, so a mock script always starts from its first response."""
        p = self.settings.provider
        if p.kind == "mock":
            if not self.mock_script:
                raise ConfigError("provider 'mock' needs paths.mock_script")
            return ScriptedChatModel(responses=list(self.mock_script))
        if p.kind == "http":
            if not p.endpoint:
                raise ConfigError("provider 'http' needs provider.endpoint")
            return HttpChatModel(
                endpoint=p.endpoint,
                model=p.model,
                api_key_env=p.api_key_env,
                timeout=p.timeout,
                temperature=p.temperature,
            )
        return ollama_chat_model(p.model, temperature=p.temperature)


def _require(path: Optional[Path], name: str) -> Path:
    if path is None:
        raise ConfigError(f"paths.{name} is not configured")
    return path


def ingest_corpus(
    graph: PathLike,
    terms: PathLike,
    templates: PathLike,
    settings: Optional[LexGraphSettings] = None,
) -> Runtime:
    """
    Load and validate the graph, term statistics and templates.

    Raises:
        GraphLoadError, TermStatsError, TemplateError: with file and line context.
    """
    settings = settings or LexGraphSettings()
    graph_path = Path(graph)
    try:
        handle = open(graph_path, "rb")
    except OSError as e:
        raise GraphLoadError(f"cannot open graph: {e}", source=str(graph_path)) from e
    with handle:
        g = load_graph(handle, source_name=str(graph_path))
    stats = load_term_stats(terms, sigma=settings.retrieval.sigma)
    template_set = load_templates(templates)
    overrides = {}
    if settings.prompt.score_floor is not None:
        overrides["score_floor"] = settings.prompt.score_floor
    if settings.prompt.generic_template is not None:
        overrides["generic_template_id"] = settings.prompt.generic_template
    if overrides:
        template_set = replace(template_set, **overrides)
    runtime = Runtime(
        graph=g,
        stats=stats,
        templates=template_set,
        settings=settings,
        embeddings=GraphCentroidEmbeddings(g) if g.embedding_dim else None,
    )
    for line in runtime.summary().lines():
        logger.info(line)
    return runtime


def load_runtime(settings: LexGraphSettings) -> Runtime:
    """``ingest_corpus`` over the configured paths plus the configured search client and mock script."""
    paths = settings.paths
    runtime = ingest_corpus(
        _require(paths.graph, "graph"),
        _require(paths.terms, "terms"),
        _require(paths.templates, "templates"),
        settings,
    )
    client: Optional[SearchClient] = None
    if settings.search.enabled:
        if settings.search.endpoint:
            client = HttpSearchClient(
                settings.search.endpoint, settings.search.timeout, settings.search.max_results
            )
        else:
            client = FixtureSearchClient.from_file(
                _require(paths.search_fixture, "search_fixture"), settings.search.max_results
            )
    script: tuple[str, ...] = ()
    if settings.provider.kind == "mock":
        script = tuple(load_mock_script(_require(paths.mock_script, "mock_script")))
    return replace(runtime, search_client=client, mock_script=script)
