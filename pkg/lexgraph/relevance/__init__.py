"""
Multi-dimensional concept-to-query relevance used to build the knowledge background.

R(C, Q) = w_text * R_text + w_kg * R_kg + w_case * R_case + w_jur * R_jur

R_text is BM25+ min-max normalized over the candidate set, R_kg decays
exponentially with graph distance to the query's concepts, R_case is the
max-normalized citation count and R_jur the Jaccard overlap of jurisdictions.
"""

import math
from dataclasses import asdict, dataclass
from typing import Mapping, Optional, Sequence

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import ParameterError
from ..kg_core import ConceptId, KnowledgeGraph, LegalConcept, hop_distances
from ..retrieval import Query
from ..retrieval.params import NORMALIZATION_TOLERANCE


class Bm25Params(BaseModel):
    model_config = ConfigDict(frozen=True)

    k1: float = Field(1.2, gt=0.0)
    b: float = Field(0.75, ge=0.0, le=1.0)
    delta: float = Field(1.0, ge=0.0)


class RelevanceWeights(BaseModel):
    model_config = ConfigDict(frozen=True)

    w_text: float = Field(0.4, ge=0.0)
    w_kg: float = Field(0.3, ge=0.0)
    w_case: float = Field(0.15, ge=0.0)
    w_jur: float = Field(0.15, ge=0.0)

    @model_validator(mode="after")
    def _normalized(self) -> "RelevanceWeights":
        total = math.fsum(self.as_tuple())
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            raise ValueError(f"relevance weights must sum to 1, got {total}")
        return self

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.w_text, self.w_kg, self.w_case, self.w_jur)


class RelevanceParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    bm25: Bm25Params = Field(default_factory=Bm25Params)
    weights: RelevanceWeights = Field(default_factory=RelevanceWeights)
    lambda_kg: float = Field(0.5, gt=0.0, lt=1.0)


@dataclass(frozen=True)
class RelevanceBreakdown:
    r_text_raw: float
    r_text: float
    r_kg: float
    r_case: float
    r_jur: float
    total: float
    candidate_count: int = 1
    text_min: float = 0.0
    text_max: float = 0.0

    @classmethod
    def combine(
        cls,
        r_text_raw: float,
        r_text: float,
        r_kg: float,
        r_case: float,
        r_jur: float,
        weights: RelevanceWeights,
        **extra,
    ) -> "RelevanceBreakdown":
        w = weights.as_tuple()
        if any(x < 0 for x in w) or abs(math.fsum(w) - 1.0) > NORMALIZATION_TOLERANCE:
            raise ParameterError(f"relevance weights must be >= 0 and sum to 1, got {w}")
        total = math.fsum(
            wi * ri for wi, ri in zip(w, (r_text, r_kg, r_case, r_jur))
        )
        return cls(
            r_text_raw=r_text_raw,
            r_text=r_text,
            r_kg=r_kg,
            r_case=r_case,
            r_jur=r_jur,
            total=min(1.0, max(0.0, total)),
            **extra,
        )

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def idf(term: str, g: KnowledgeGraph) -> float:
    df = g.df.get(term, 0)
    n = g.doc_count
    return math.log((n - df + 0.5) / (df + 0.5) + 1.0)


def bm25_saturation(f: float, doc_len: float, avgdl: float, p: Bm25Params) -> float:
    """Per-term bracket: saturated term frequency plus the long-document compensation."""
    length_norm = 1.0 - p.b + p.b * (doc_len / avgdl if avgdl > 0 else 0.0)
    return f * (p.k1 + 1.0) / (f + p.k1 * length_norm) + p.delta


def bm25_plus(q: Query, c: LegalConcept, g: KnowledgeGraph, p: Bm25Params) -> float:
    tf = g.term_frequencies(c.id)
    shared = sorted(set(q.tokens) & set(tf))
    if not shared:
        return 0.0
    doc_len = g.doc_length(c.id)
    return math.fsum(
        idf(t, g) * bm25_saturation(tf[t], doc_len, g.avgdl, p) for t in shared
    )


def kg_relevance(
    g: KnowledgeGraph, c: ConceptId, q: Query, lambda_kg: float
) -> float:
    g.require(c)
    if not q.concept_ids:
        return 0.0
    for target in q.concept_ids:
        g.require(target)
    if c in q.concept_ids:
        return 1.0
    distances = hop_distances(g, c)
    reachable = [distances[t] for t in q.concept_ids if t in distances]
    if not reachable:
        return 0.0
    return lambda_kg ** min(reachable)


def case_relevance(c: LegalConcept, g: KnowledgeGraph) -> float:
    if g.max_citation_count <= 0:
        return 0.0
    return max(0, c.citation_count) / g.max_citation_count


def jur_relevance(c: LegalConcept, q: Query) -> float:
    """Jaccard overlap of jurisdictions; an empty set on either side means unrestricted."""
    if not c.jurisdictions or not q.jurisdictions:
        return 1.0
    return len(c.jurisdictions & q.jurisdictions) / len(c.jurisdictions | q.jurisdictions)


def _min_max(value: float, low: float, high: float) -> float:
    if high <= low:
        return 1.0
    return min(1.0, max(0.0, (value - low) / (high - low)))


def concept_relevance(
    g: KnowledgeGraph,
    c: ConceptId,
    q: Query,
    params: RelevanceParams,
    raw_text_scores: Optional[Mapping[ConceptId, float]] = None,
) -> RelevanceBreakdown:
    """
    Relevance of ``c`` to ``q``; ``raw_text_scores`` is the candidate set over
    which BM25+ is min-max normalized (``c`` alone when omitted); when it holds
    an entry for ``c`` that entry is the value normalized.
    """
    concept = g.concept(c)
    raw = bm25_plus(q, concept, g, params.bm25)
    pool = dict(raw_text_scores or {})
    pool.setdefault(c, raw)
    low, high = min(pool.values()), max(pool.values())
    return RelevanceBreakdown.combine(
        r_text_raw=raw,
        r_text=_min_max(pool[c], low, high),
        r_kg=kg_relevance(g, c, q, params.lambda_kg),
        r_case=case_relevance(concept, g),
        r_jur=jur_relevance(concept, q),
        weights=params.weights,
        candidate_count=len(pool),
        text_min=low,
        text_max=high,
    )


def rank_background(
    g: KnowledgeGraph,
    q: Query,
    candidates: Sequence[ConceptId],
    params: RelevanceParams,
    m: int,
) -> list[tuple[ConceptId, RelevanceBreakdown]]:
    """Top ``m`` candidates by total relevance, ties broken by concept id."""
    if m < 1:
        raise ParameterError(f"m must be >= 1, got {m}")
    unique = sorted(set(candidates))
    if not unique:
        return []
    raw = {cid: bm25_plus(q, g.concept(cid), g, params.bm25) for cid in unique}
    ranked = sorted(
        ((cid, concept_relevance(g, cid, q, params, raw)) for cid in unique),
        key=lambda item: (-item[1].total, item[0]),
    )
    logger.debug(
        f"Background ranking over {len(unique)} candidates: "
        + ", ".join(f"{cid}={b.total:.4f}" for cid, b in ranked[:m])
    )
    return ranked[:m]


__all__ = [
    "Bm25Params",
    "RelevanceBreakdown",
    "RelevanceParams",
    "RelevanceWeights",
    "bm25_plus",
    "bm25_saturation",
    "case_relevance",
    "concept_relevance",
    "idf",
    "jur_relevance",
    "kg_relevance",
    "rank_background",
]
