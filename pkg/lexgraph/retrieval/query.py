"""
Query model, concept identification and the default embedding provider.
"""

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
from langchain_core.embeddings import Embeddings
from loguru import logger

from ..kg_core import ConceptId, KnowledgeGraph
from ..text import stem, tokenize
from .codes import extract_codes


@dataclass(frozen=True)
class Query:
    text: str
    tokens: tuple[str, ...] = ()
    code: Optional[str] = None
    concept_ids: frozenset[ConceptId] = field(default_factory=frozenset)
    embedding: Optional[tuple[float, ...]] = None
    jurisdictions: frozenset[str] = field(default_factory=frozenset)

    @property
    def stems(self) -> tuple[str, ...]:
        return tuple(stem(t) for t in self.tokens)

    @classmethod
    def from_text(cls, text: str, **kwargs) -> "Query":
        return cls(text=text, tokens=tuple(tokenize(text)), **kwargs)


def contains_sequence(haystack: Sequence[str], needle: Sequence[str]) -> bool:
    """True when ``needle`` occurs contiguously in ``haystack``."""
    n = len(needle)
    if n == 0:
        return False
    return any(tuple(haystack[i : i + n]) == tuple(needle) for i in range(len(haystack) - n + 1))


def identify_concepts(text: str, g: KnowledgeGraph) -> frozenset[ConceptId]:
    """Concepts whose code is cited in ``text`` or whose title appears verbatim in it."""
    tokens = tokenize(text)
    identified: set[ConceptId] = set()
    for code in extract_codes(text):
        cid = g.id_for_code(code)
        if cid is not None:
            identified.add(cid)
    for cid, concept in g.concepts.items():
        title_tokens = tokenize(concept.title)
        if title_tokens and contains_sequence(tokens, title_tokens):
            identified.add(cid)
    return frozenset(identified)


class GraphCentroidEmbeddings(Embeddings):
    """
    Embeds text as the term-weighted mean of the embeddings of concepts whose
    terms occur in it. Returns an empty vector when no concept term matches.
    """

    def __init__(self, graph: KnowledgeGraph) -> None:
        self.graph = graph
        self._profiles = [
            (
                np.asarray(concept.embedding, dtype=float),
                [(tuple(tokenize(term)), weight) for term, weight in concept.terms],
            )
            for concept in graph.concepts.values()
            if concept.embedding is not None
        ]

    def embed_query(self, text: str) -> list[float]:
        tokens = tokenize(text)
        total = np.zeros(self.graph.embedding_dim or 0, dtype=float)
        mass = 0.0
        for vector, terms in self._profiles:
            weight = sum(w for term, w in terms if contains_sequence(tokens, term))
            if weight > 0:
                total = total + weight * vector
                mass += weight
        if mass == 0.0:
            return []
        return (total / mass).tolist()

    def embed_documents(self, texts: list[str]) -> list[list[float]]:
        return [self.embed_query(text) for text in texts]


def build_query(
    text: str,
    g: KnowledgeGraph,
    embedder: Optional[Embeddings] = None,
    jurisdictions: Iterable[str] = (),
) -> Query:
    codes = extract_codes(text)
    embedding: Optional[tuple[float, ...]] = None
    if embedder is not None:
        vector = embedder.embed_query(text)
        if len(vector) and np.any(np.asarray(vector) != 0):
            embedding = tuple(float(x) for x in vector)
    concept_ids = identify_concepts(text, g)
    if not concept_ids:
        logger.debug(f"No graph concepts identified in query {text[:60]!r}")
    return Query.from_text(
        text,
        code=codes[0] if codes else None,
        concept_ids=concept_ids,
        embedding=embedding,
        jurisdictions=frozenset(jurisdictions),
    )
