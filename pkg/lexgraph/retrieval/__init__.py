from .codes import code_match, extract_codes, normalize_code, partial_match
from .params import STRATEGIES, FusionWeights, MatchParams
from .query import GraphCentroidEmbeddings, Query, build_query, identify_concepts
from .ranking import RetrievalResult, concept_similarity, mmr_select, retrieve, score_concept
from .strategies import StrategyScores, cosine, fuse_scores, path_inference, vector_similarity
from .terms import (
    EmbeddingTermSimilarity,
    TermEntry,
    TermSimilarity,
    TermStats,
    ilt_weight,
    lexicon,
    lexicon_tokens,
    load_term_stats,
    match_term,
    term_match_score,
)

__all__ = [
    "STRATEGIES",
    "EmbeddingTermSimilarity",
    "FusionWeights",
    "GraphCentroidEmbeddings",
    "MatchParams",
    "Query",
    "RetrievalResult",
    "StrategyScores",
    "TermEntry",
    "TermSimilarity",
    "TermStats",
    "build_query",
    "code_match",
    "concept_similarity",
    "cosine",
    "extract_codes",
    "fuse_scores",
    "identify_concepts",
    "ilt_weight",
    "lexicon",
    "lexicon_tokens",
    "load_term_stats",
    "match_term",
    "mmr_select",
    "normalize_code",
    "partial_match",
    "path_inference",
    "retrieve",
    "score_concept",
    "term_match_score",
    "vector_similarity",
]
