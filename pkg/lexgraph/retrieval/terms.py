"""
Professional term statistics and the term matching strategy.
"""

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional, Protocol, Union

import numpy as np
from langchain_core.embeddings import Embeddings
from loguru import logger

from ..errors import ParameterError, TermStatsError
from ..kg_core import LegalConcept
from ..text import stem, tokenize
from .params import MatchParams
from .query import Query, contains_sequence

COLUMNS = ("term", "freq_legal", "freq_general", "jur_scope")


@dataclass(frozen=True)
class TermEntry:
    freq_legal: int = 0
    freq_general: int = 0
    jur_scope: float = 1.0


@dataclass(frozen=True)
class TermStats:
    """Legal vs general corpus frequencies per term, keyed by the normalized term."""

    entries: Mapping[str, TermEntry] = field(default_factory=dict)
    sigma: float = 1.0

    def __post_init__(self) -> None:
        if not self.sigma > 0:
            raise ParameterError(f"sigma must be > 0, got {self.sigma}")
        for term, entry in self.entries.items():
            if not 0.0 <= entry.jur_scope <= 1.0:
                raise ParameterError(f"jur_scope of {term!r} not in [0, 1]")
            if entry.freq_legal < 0 or entry.freq_general < 0:
                raise ParameterError(f"negative frequency for {term!r}")

    def get(self, term: str) -> TermEntry:
        return self.entries.get(normalize_term(term), _ABSENT)


_ABSENT = TermEntry(0, 0, 1.0)


def normalize_term(term: str) -> str:
    return " ".join(tokenize(term))


def load_term_stats(path: Union[str, Path], sigma: float = 1.0) -> TermStats:
    """Read a ``.terms.tsv`` file; a header row naming the columns is optional."""
    entries: dict[str, TermEntry] = {}
    try:
        handle = open(path, encoding="utf-8", newline="")
    except OSError as e:
        raise TermStatsError(f"cannot open term statistics {path}: {e}") from e
    with handle:
        for lineno, row in enumerate(csv.reader(handle, delimiter="\t"), start=1):
            if not row or not "".join(row).strip() or row[0].startswith("#"):
                continue
            if lineno == 1 and tuple(c.strip().lower() for c in row) == COLUMNS:
                continue
            if len(row) != len(COLUMNS):
                raise TermStatsError(
                    f"{path}:{lineno}: expected {len(COLUMNS)} columns, got {len(row)}"
                )
            try:
                entry = TermEntry(
                    freq_legal=int(row[1]),
                    freq_general=int(row[2]),
                    jur_scope=float(row[3]),
                )
            except ValueError as e:
                raise TermStatsError(f"{path}:{lineno}: {e}") from e
            if entry.freq_legal < 0 or entry.freq_general < 0:
                raise TermStatsError(f"{path}:{lineno}: negative frequency")
            if not 0.0 <= entry.jur_scope <= 1.0:
                raise TermStatsError(f"{path}:{lineno}: jur_scope not in [0, 1]")
            entries[normalize_term(row[0])] = entry
    logger.info(f"Loaded {len(entries)} term statistics from {path}")
    return TermStats(entries=entries, sigma=sigma)


def ilt_weight(term: str, stats: TermStats) -> float:
    """Inverse legal-term weight, clamped below at 0."""
    entry = stats.get(term)
    raw = math.log((entry.freq_legal + stats.sigma) / (entry.freq_general + stats.sigma))
    return max(0.0, raw) * entry.jur_scope


def lexicon(stats: TermStats) -> frozenset[str]:
    """Professional terms: those with a positive ILT weight."""
    return frozenset(term for term in stats.entries if ilt_weight(term, stats) > 0)


def lexicon_tokens(stats: TermStats) -> frozenset[str]:
    return frozenset(token for term in lexicon(stats) for token in term.split())


class TermSimilarity(Protocol):
    def __call__(self, term: str, q: Query) -> float: ...


class EmbeddingTermSimilarity:
    """
    Cosine between the term's embedding and the query embedding, floored at 0.

    Without an embedding provider, or without a query embedding, the
    similarity is 0.
    """

    def __init__(self, embeddings: Optional[Embeddings] = None) -> None:
        self.embeddings = embeddings
        self._cache: dict[str, np.ndarray] = {}

    def __call__(self, term: str, q: Query) -> float:
        if self.embeddings is None or q.embedding is None:
            return 0.0
        vector = self._cache.get(term)
        if vector is None:
            vector = np.asarray(self.embeddings.embed_query(term), dtype=float)
            self._cache[term] = vector
        query_vector = np.asarray(q.embedding, dtype=float)
        if vector.shape != query_vector.shape:
            return 0.0
        norm = float(np.linalg.norm(vector) * np.linalg.norm(query_vector))
        if norm == 0.0:
            return 0.0
        return min(1.0, max(0.0, float(np.dot(vector, query_vector)) / norm))


def match_term(term: str, q: Query, p: MatchParams, sem: TermSimilarity) -> float:
    term_tokens = tokenize(term)
    exact = 1.0 if contains_sequence(q.tokens, term_tokens) else 0.0
    stemmed = 1.0 if contains_sequence(q.stems, [stem(t) for t in term_tokens]) else 0.0
    similarity = min(1.0, max(0.0, sem(term, q)))
    return p.alpha1 * exact + p.alpha2 * stemmed + p.alpha3 * similarity


def term_match_score(
    c: LegalConcept,
    q: Query,
    stats: TermStats,
    p: MatchParams,
    sem: TermSimilarity,
) -> float:
    if not c.terms:
        return 0.0
    total_weight = math.fsum(w for _, w in c.terms)
    if total_weight <= 0:
        logger.warning(f"All term weights of concept {c.id!r} are zero; TM scored 0")
        return 0.0
    score = math.fsum(
        w * match_term(t, q, p, sem) * min(1.0, ilt_weight(t, stats) / p.ilt_cap)
        for t, w in c.terms
        if w > 0
    )
    return min(1.0, max(0.0, score / total_weight))
