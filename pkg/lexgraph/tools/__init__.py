from datetime import date
from typing import Optional

from langchain_core.tools import BaseTool, tool
from loguru import logger

from ..cli_eval.runtime import Runtime
from ..errors import LexGraphError
from ..freshness_search import authority_score, filter_timely
from ..kg_core import concept_by_code, neighbors
from ..prompt_engine import citation_code
from ..retrieval import EmbeddingTermSimilarity, build_query, normalize_code, retrieve


def build_tools(runtime: Runtime) -> list[BaseTool]:
    """Tools bound to ``runtime``, ready for ``llm.bind_tools`` or a langgraph ``ToolNode``."""
    settings = runtime.settings

    @tool(parse_docstring=True)
    def search_legal_concepts(query: str, max_results: int = 5) -> list:
        """
        Search the legal knowledge graph for the concepts most relevant to a question.

        Args:
            query: Legal question or keywords, e.g. "liability for damage caused by fault". \
                Citing a code such as "art. 1382 CC" boosts the matching provision.
            max_results: Maximum number of concepts to return. Default is 5.

        Returns:
            List of concepts, each a dictionary with id, code, title, layer and the \
            fused relevance score, best match first.
        """
        try:
            q = build_query(query, runtime.graph, runtime.embeddings, settings.query.jurisdictions)
            results = retrieve(
                runtime.graph,
                q,
                runtime.stats,
                settings.retrieval,
                max(1, max_results),
                EmbeddingTermSimilarity(runtime.embeddings),
                settings.retrieval.exclude_superseded,
            )
        except LexGraphError as e:
            logger.error(f"Concept search failed: {e}")
            return [{"error": str(e)}]
        return [
            {
                "id": r.concept,
                "code": citation_code(runtime.graph.concept(r.concept)),
                "title": runtime.graph.concept(r.concept).title,
                "layer": runtime.graph.concept(r.concept).layer.value,
                "score": round(r.scores.fused, 6),
            }
            for r in results
        ]

    @tool(parse_docstring=True)
    def get_legal_concept(identifier: str) -> dict:
        """
        Fetch one legal concept by its id or its legal code.

        Args:
            identifier: Concept id (e.g. "cc_1382") or legal code (e.g. "CC-1382", \
                "art. 1382 CC").

        Returns:
            Dictionary with the concept's code, title, text, layer, jurisdictions, \
            citation count and related concepts, or an error message.
        """
        concept = None
        if identifier in runtime.graph:
            concept = runtime.graph.concept(identifier)
        else:
            concept = concept_by_code(runtime.graph, normalize_code(identifier))
        if concept is None:
            logger.warning(f"No legal concept found for {identifier!r}")
            return {"error": f"no concept with id or code {identifier!r}"}
        return {
            "id": concept.id,
            "code": citation_code(concept),
            "title": concept.title,
            "text": concept.text,
            "layer": concept.layer.value,
            "jurisdictions": sorted(concept.jurisdictions),
            "citation_count": concept.citation_count,
            "superseded_by": concept.superseded_by,
            "related": [
                {"concept": r.other(concept.id), "rel_type": r.rel_type, "weight": r.weight}
                for r in neighbors(runtime.graph, concept.id)
            ],
        }

    @tool(parse_docstring=True)
    def search_legal_sources(query: str, jurisdiction: Optional[str] = None) -> list:
        """
        Search external legal sources for current statutes, regulations and case law.

        Args:
            query: Legal question or keywords.
            jurisdiction: Jurisdiction code to restrict results to, e.g. "FR". \
                Defaults to the configured jurisdiction.

        Returns:
            List of sources in force today, each with code, title, source type, \
            jurisdiction, effective date and authority score, most authoritative first.
        """
        if runtime.search_client is None:
            return [{"error": "external search is not configured"}]
        wanted = jurisdiction or settings.search.jurisdiction
        try:
            results = filter_timely(
                runtime.search_client.search(query, wanted),
                settings.search.as_of or date.today(),
                wanted,
            )
        except LexGraphError as e:
            logger.error(f"Legal source search failed: {e}")
            return [{"error": str(e)}]
        max_citations = max([r.citation_frequency for r in results] + [1])
        scored = [(authority_score(r, settings.search.weights, max_citations), r) for r in results]
        scored.sort(key=lambda item: -item[0])
        return [
            {
                "code": r.code,
                "title": r.title,
                "source_type": r.source_type.value,
                "jurisdiction": r.jurisdiction,
                "effective_date": r.effective_date.isoformat(),
                "authority": round(score, 6),
            }
            for score, r in scored
        ]

    return [search_legal_concepts, get_legal_concept, search_legal_sources]


TOOL_DESCRIPTION = """
Handles legal questions that need grounded knowledge: it searches the legal
knowledge graph for relevant concepts, fetches a concept with its relations
by id or code, and looks up current external legal sources ranked by authority.
"""

__all__ = ["TOOL_DESCRIPTION", "build_tools"]
