"""
Candidate scoring and diversity-controlled top-k selection.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from loguru import logger

from ..errors import ParameterError
from ..kg_core import ConceptId, KnowledgeGraph
from ..text import jaccard
from .codes import code_match
from .params import MatchParams
from .query import Query
from .strategies import StrategyScores, cosine, fuse_scores, path_inference, vector_similarity
from .terms import EmbeddingTermSimilarity, TermSimilarity, TermStats, term_match_score


@dataclass(frozen=True)
class RetrievalResult:
    concept: ConceptId
    scores: StrategyScores
    rank: int


def score_concept(
    g: KnowledgeGraph,
    cid: ConceptId,
    q: Query,
    stats: TermStats,
    p: MatchParams,
    sem: TermSimilarity,
) -> StrategyScores:
    concept = g.concept(cid)
    cm = code_match(concept.code or "", q.code or "", p)
    vs = 0.0
    if concept.embedding is not None and q.embedding is not None:
        vs = vector_similarity(concept.embedding, q.embedding)
    pi = path_inference(g, cid, q, p)
    tm = term_match_score(concept, q, stats, p, sem)
    return fuse_scores(cm, vs, pi, tm, p)


def concept_similarity(g: KnowledgeGraph) -> Callable[[ConceptId, ConceptId], float]:
    """Embedding cosine when both concepts carry vectors, token Jaccard of texts otherwise."""

    def similarity(a: ConceptId, b: ConceptId) -> float:
        ca, cb = g.concept(a), g.concept(b)
        if ca.embedding is not None and cb.embedding is not None:
            try:
                return cosine(ca.embedding, cb.embedding)
            except ParameterError:
                pass
        return jaccard(g.text_tokens(a), g.text_tokens(b))

    return similarity


def mmr_select(
    candidates: Sequence[tuple[ConceptId, float]],
    similarity: Callable[[ConceptId, ConceptId], float],
    k: int,
    diversity_lambda: float,
) -> list[ConceptId]:
    """
    Greedy maximal-marginal-relevance selection.

    Relevance is taken relative to the best candidate score, so uniformly
    rescaling every score does not change the selection. Ties go to the
    smaller id.
    """
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    ordered = sorted(candidates, key=lambda item: (-item[1], item[0]))
    if diversity_lambda >= 1.0:
        return [cid for cid, _ in ordered[:k]]
    top = ordered[0][1] if ordered else 0.0
    relevance = {cid: (score / top if top > 0 else 0.0) for cid, score in ordered}
    selected: list[ConceptId] = []
    redundancy = {cid: float("-inf") for cid, _ in ordered}
    remaining = [cid for cid, _ in ordered]
    while remaining and len(selected) < k:
        if not selected:
            pick = remaining[0]
        else:
            pick = _best_marginal(remaining, relevance, redundancy, diversity_lambda)
        selected.append(pick)
        remaining.remove(pick)
        for cid in remaining:
            redundancy[cid] = max(redundancy[cid], similarity(cid, pick))
    return selected


def _best_marginal(
    remaining: list[ConceptId],
    relevance: dict[ConceptId, float],
    redundancy: dict[ConceptId, float],
    diversity_lambda: float,
) -> ConceptId:
    best: Optional[ConceptId] = None
    best_score = float("-inf")
    for cid in sorted(remaining):
        score = (
            diversity_lambda * relevance[cid]
            - (1.0 - diversity_lambda) * redundancy[cid]
        )
        if best is None or score > best_score:
            best, best_score = cid, score
    assert best is not None
    return best


def retrieve(
    g: KnowledgeGraph,
    q: Query,
    stats: TermStats,
    p: MatchParams,
    k: int,
    sem: Optional[TermSimilarity] = None,
    exclude_superseded: bool = False,
) -> list[RetrievalResult]:
    if len(g) == 0:
        raise ParameterError("cannot retrieve from an empty graph")
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    sem = sem or EmbeddingTermSimilarity()
    scored: dict[ConceptId, StrategyScores] = {}
    for cid in sorted(g.concepts):
        if exclude_superseded and g.concepts[cid].superseded_by is not None:
            continue
        scored[cid] = score_concept(g, cid, q, stats, p, sem)
    picks = mmr_select(
        [(cid, s.fused) for cid, s in scored.items()],
        concept_similarity(g),
        k,
        p.diversity_lambda,
    )
    results = [
        RetrievalResult(concept=cid, scores=scored[cid], rank=rank)
        for rank, cid in enumerate(picks, start=1)
    ]
    logger.debug(
        "Retrieved "
        + ", ".join(f"{r.concept}={r.scores.fused:.4f}" for r in results)
    )
    return results
