"""
Authority scoring, timeliness filtering and graph/search knowledge merging.
"""

import math
from datetime import date
from typing import Optional, Sequence, Union

from loguru import logger
from pydantic import ValidationError

from ..errors import ParameterError
from ..kg_core import AuthorityRecord, KnowledgeGraph, SourceType
from ..prompt_engine import BackgroundEntry, render_snippet
from .clients import SearchClient
from .models import AuthorityWeights, MergeParams, SearchResult

SOURCE_TYPE_COUNT = len(SourceType)


def _weights(weights: Union[AuthorityWeights, Sequence[float]]) -> AuthorityWeights:
    if isinstance(weights, AuthorityWeights):
        return weights
    try:
        source_type, institution, citations = weights
        return AuthorityWeights(
            source_type=source_type, institution=institution, citations=citations
        )
    except (ValueError, TypeError, ValidationError) as e:
        raise ParameterError(f"invalid authority weights {weights!r}: {e}") from e


def authority_of(
    source_type: SourceType,
    institution_level: int,
    citation_frequency: int,
    weights: Union[AuthorityWeights, Sequence[float]],
    max_citations: int,
) -> float:
    w = _weights(weights)
    if institution_level < 1:
        raise ParameterError(f"institution_level must be >= 1, got {institution_level}")
    if citation_frequency < 0:
        raise ParameterError(f"citation_frequency must be >= 0, got {citation_frequency}")
    if max_citations < citation_frequency:
        raise ParameterError(
            f"max_citations {max_citations} is below citation_frequency {citation_frequency}"
        )
    score = math.fsum(
        (
            w.source_type * source_type.rank / SOURCE_TYPE_COUNT,
            w.institution / institution_level,
            w.citations * citation_frequency / max(1, max_citations),
        )
    )
    return min(1.0, max(0.0, score))


def authority_score(
    r: SearchResult,
    weights: Union[AuthorityWeights, Sequence[float]],
    max_citations: int,
) -> float:
    return authority_of(
        r.source_type, r.institution_level, r.citation_frequency, weights, max_citations
    )


def record_authority(
    record: AuthorityRecord,
    weights: Union[AuthorityWeights, Sequence[float]],
    max_citations: int,
) -> float:
    return authority_of(
        record.source_type,
        record.institution_level,
        record.citation_frequency,
        weights,
        max(max_citations, record.citation_frequency),
    )


def filter_timely(
    results: Sequence[SearchResult], as_of: date, jurisdiction: Optional[str] = None
) -> list[SearchResult]:
    """
    Drop superseded results, results not yet in force on ``as_of`` and, when
    ``jurisdiction`` is given, results of other jurisdictions. Order is kept.
    """
    wanted = jurisdiction.casefold() if jurisdiction else None
    kept = [
        r
        for r in results
        if not r.superseded
        and r.effective_date <= as_of
        and (wanted is None or r.jurisdiction.casefold() == wanted)
    ]
    if len(kept) != len(results):
        logger.debug(f"Timeliness filter kept {len(kept)} of {len(results)} search results")
    return kept


def search_entry(r: SearchResult, authority: float) -> BackgroundEntry:
    return BackgroundEntry(
        code=r.code,
        snippet=render_snippet(r.code, r.title, r.text),
        provenance="search",
        authority=authority,
    )


def _graph_authority(
    entry: BackgroundEntry, g: KnowledgeGraph, params: MergeParams, max_citations: int
) -> float:
    if entry.concept_id is not None and entry.concept_id in g:
        record = g.concept(entry.concept_id).authority
        if record is not None:
            return record_authority(record, params.weights, max_citations)
    return params.graph_default_authority


def merge_knowledge(
    graph_hits: Sequence[BackgroundEntry],
    search_hits: Sequence[SearchResult],
    g: KnowledgeGraph,
    params: MergeParams = MergeParams(),
) -> list[BackgroundEntry]:
    """
    Document-level fusion of graph knowledge with timely search results.

    Entries are deduplicated by normalized code. A search result replaces
    the graph entry with the same code, in place, only when its authority is
    strictly greater than the graph entry's authority (the concept's own
    authority record, else ``graph_default_authority``). Other search
    results are appended by descending authority.
    """
    merged: list[BackgroundEntry] = []
    position: dict[str, int] = {}
    for entry in graph_hits:
        if entry.code is not None:
            if entry.code in position:
                continue
            position[entry.code] = len(merged)
        merged.append(entry)
    if not search_hits:
        return merged

    max_citations = max(
        [r.citation_frequency for r in search_hits]
        + [
            g.concept(e.concept_id).authority.citation_frequency
            for e in merged
            if e.concept_id in g and g.concept(e.concept_id).authority is not None
        ]
        + [1]
    )
    graph_codes = set(position)
    best: dict[str, BackgroundEntry] = {}
    uncoded: list[BackgroundEntry] = []
    for r in search_hits:
        entry = search_entry(r, authority_score(r, params.weights, max_citations))
        if r.code is None:
            uncoded.append(entry)
        elif r.code not in best or entry.authority > best[r.code].authority:
            best[r.code] = entry

    appended: list[BackgroundEntry] = []
    for code, entry in best.items():
        if code in graph_codes:
            current = merged[position[code]]
            threshold = _graph_authority(current, g, params, max_citations)
            if entry.authority > threshold:
                logger.info(
                    f"Search result for {code} (authority {entry.authority:.3f}) replaces "
                    f"graph entry (authority {threshold:.3f})"
                )
                merged[position[code]] = entry
        else:
            appended.append(entry)
    appended += uncoded
    appended.sort(key=lambda e: -(e.authority or 0.0))
    return merged + appended


def search_knowledge(
    client: SearchClient,
    query_text: str,
    graph_hits: Sequence[BackgroundEntry],
    g: KnowledgeGraph,
    as_of: date,
    jurisdiction: Optional[str] = None,
    params: MergeParams = MergeParams(),
) -> list[BackgroundEntry]:
    results = client.search(query_text, jurisdiction)
    timely = filter_timely(results, as_of, jurisdiction)
    merged = merge_knowledge(graph_hits, timely, g, params)
    logger.info(
        f"Search returned {len(results)} results, {len(timely)} timely; "
        f"knowledge list has {len(merged)} entries"
    )
    return merged
