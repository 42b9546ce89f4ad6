"""
In-memory knowledge graph with derived corpus statistics and path queries.
"""

import math
from collections import Counter
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

import networkx as nx
from loguru import logger

from ..errors import UnknownConceptError
from ..text import tokenize
from .models import ConceptId, LayerTag, LegalConcept, PathResult, Relation, Violation


def _relation_key(relation: Relation) -> tuple:
    return (-relation.weight, relation.rel_type, relation.source, relation.target)


class KnowledgeGraph:
    """
    Immutable store of legal concepts and typed weighted relations.

    Relations are stored directed and traversed undirected. ``avgdl``, ``df``
    and ``doc_count`` are derived from concept texts at construction time, so
    they can never go stale. Construction never rejects invariant violations:
    ``validate_graph`` reports them, and ``load_graph`` refuses to return a
    graph that has any.
    """

    def __init__(
        self,
        concepts: Iterable[LegalConcept],
        relations: Iterable[Relation] = (),
        embedding_dim: Optional[int] = None,
    ) -> None:
        self._concepts: dict[ConceptId, LegalConcept] = {}
        for concept in concepts:
            self._concepts[concept.id] = concept
        self._relations: tuple[Relation, ...] = tuple(relations)
        self._embedding_dim = embedding_dim or self._infer_embedding_dim()

        self._tf: dict[ConceptId, Counter] = {}
        self._doc_len: dict[ConceptId, int] = {}
        df: Counter = Counter()
        for cid, concept in self._concepts.items():
            tokens = tokenize(concept.text)
            self._tf[cid] = Counter(tokens)
            self._doc_len[cid] = len(tokens)
            df.update(self._tf[cid].keys())
        self._df = dict(df)
        self._avgdl = (
            sum(self._doc_len.values()) / len(self._doc_len) if self._doc_len else 0.0
        )
        self._max_citations = max(
            (c.citation_count for c in self._concepts.values()), default=0
        )
        self._by_code: dict[str, ConceptId] = {}
        for cid in sorted(self._concepts):
            code = self._concepts[cid].code
            if code and code not in self._by_code:
                self._by_code[code] = cid

        self._undirected = nx.Graph()
        self._undirected.add_nodes_from(self._concepts)
        for relation in self._relations:
            if (
                relation.source not in self._concepts
                or relation.target not in self._concepts
                or relation.source == relation.target
            ):
                continue
            if self._undirected.has_edge(relation.source, relation.target):
                data = self._undirected[relation.source][relation.target]
                data["relations"] = sorted(
                    data["relations"] + [relation], key=_relation_key
                )
            else:
                self._undirected.add_edge(
                    relation.source, relation.target, relations=[relation]
                )
        nx.freeze(self._undirected)
        logger.debug(
            f"Knowledge graph built: {len(self._concepts)} concepts, "
            f"{len(self._relations)} relations, avgdl={self._avgdl:.3f}"
        )

    def _infer_embedding_dim(self) -> Optional[int]:
        dims = Counter(
            len(c.embedding) for c in self._concepts.values() if c.embedding is not None
        )
        if not dims:
            return None
        # Most common dimension; the first seen wins ties.
        return dims.most_common(1)[0][0]

    @property
    def concepts(self) -> Mapping[ConceptId, LegalConcept]:
        return MappingProxyType(self._concepts)

    @property
    def relations(self) -> tuple[Relation, ...]:
        return self._relations

    @property
    def embedding_dim(self) -> Optional[int]:
        return self._embedding_dim

    @property
    def avgdl(self) -> float:
        return self._avgdl

    @property
    def doc_count(self) -> int:
        return len(self._concepts)

    @property
    def df(self) -> Mapping[str, int]:
        return MappingProxyType(self._df)

    @property
    def max_citation_count(self) -> int:
        return self._max_citations

    @property
    def undirected(self) -> nx.Graph:
        """Frozen undirected view; edge attribute ``relations`` holds the stored relations."""
        return self._undirected

    def __contains__(self, concept_id: object) -> bool:
        return concept_id in self._concepts

    def __len__(self) -> int:
        return len(self._concepts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KnowledgeGraph):
            return NotImplemented
        return (
            self._concepts == other._concepts
            and self._relations == other._relations
            and self._embedding_dim == other._embedding_dim
        )

    __hash__ = object.__hash__

    def concept(self, concept_id: ConceptId) -> LegalConcept:
        try:
            return self._concepts[concept_id]
        except KeyError:
            raise UnknownConceptError(concept_id) from None

    def require(self, concept_id: ConceptId) -> None:
        if concept_id not in self._concepts:
            raise UnknownConceptError(concept_id)

    def term_frequencies(self, concept_id: ConceptId) -> Mapping[str, int]:
        self.require(concept_id)
        return MappingProxyType(self._tf[concept_id])

    def doc_length(self, concept_id: ConceptId) -> int:
        self.require(concept_id)
        return self._doc_len[concept_id]

    def text_tokens(self, concept_id: ConceptId) -> frozenset[str]:
        self.require(concept_id)
        return frozenset(self._tf[concept_id])

    def codes(self) -> frozenset[str]:
        return frozenset(self._by_code)

    def id_for_code(self, code: str) -> Optional[ConceptId]:
        return self._by_code.get(code)


def concepts_by_layer(g: KnowledgeGraph, layer: LayerTag) -> list[ConceptId]:
    return sorted(cid for cid, c in g.concepts.items() if c.layer == layer)


def concept_by_code(g: KnowledgeGraph, code: str) -> Optional[LegalConcept]:
    """Lookup by normalized code; the lexicographically smallest id wins when codes repeat."""
    cid = g.id_for_code(code)
    return g.concepts[cid] if cid is not None else None


def neighbors(g: KnowledgeGraph, concept_id: ConceptId) -> list[Relation]:
    g.require(concept_id)
    incident: list[Relation] = []
    for other in sorted(g.undirected.neighbors(concept_id)):
        incident.extend(g.undirected[concept_id][other]["relations"])
    return incident


def _best_relation(g: KnowledgeGraph, u: ConceptId, v: ConceptId) -> Relation:
    # relations are kept sorted by descending weight
    return g.undirected[u][v]["relations"][0]


def shortest_path(
    g: KnowledgeGraph, a: ConceptId, b: ConceptId
) -> Optional[PathResult]:
    """
    Hop-minimal undirected path from ``a`` to ``b``.

    Among hop-minimal paths the one with the largest sum of relation weights is
    returned; remaining ties go to the lexicographically smallest node
    sequence. Parallel relations between the same pair contribute their
    heaviest member. Returns None when ``b`` is unreachable.
    """
    g.require(a)
    g.require(b)
    if a == b:
        return PathResult(length=0, relations=(), nodes=(a,))
    best_key: Optional[tuple] = None
    best_nodes: Optional[list[ConceptId]] = None
    try:
        for nodes in nx.all_shortest_paths(g.undirected, a, b):
            total = math.fsum(
                _best_relation(g, u, v).weight for u, v in zip(nodes, nodes[1:])
            )
            key = (-total, tuple(nodes))
            if best_key is None or key < best_key:
                best_key, best_nodes = key, nodes
    except nx.NetworkXNoPath:
        return None
    if best_nodes is None:
        return None
    relations = tuple(
        _best_relation(g, u, v) for u, v in zip(best_nodes, best_nodes[1:])
    )
    return PathResult(
        length=len(relations), relations=relations, nodes=tuple(best_nodes)
    )


def hop_distances(g: KnowledgeGraph, source: ConceptId) -> Mapping[ConceptId, int]:
    """Breadth-first hop counts from ``source`` to every reachable concept."""
    g.require(source)
    return nx.single_source_shortest_path_length(g.undirected, source)


def validate_graph(g: KnowledgeGraph) -> list[Violation]:
    """Return one violation per broken invariant; an empty list means the graph is valid."""
    violations: list[Violation] = []
    if g.doc_count == 0:
        return [Violation("graph", "empty graph")]
    for cid in sorted(g.concepts):
        concept = g.concepts[cid]
        record = f"concept {cid!r}"
        if not cid or not cid.strip():
            violations.append(Violation(record, "concept id must not be blank"))
        if concept.embedding is not None and len(concept.embedding) != g.embedding_dim:
            violations.append(
                Violation(
                    record,
                    f"embedding dimension {len(concept.embedding)} != {g.embedding_dim}",
                )
            )
        bad_terms = [
            term
            for term, weight in concept.terms
            if not math.isfinite(weight) or weight < 0
        ]
        if bad_terms:
            violations.append(
                Violation(record, f"term weights must be finite and >= 0: {bad_terms}")
            )
        if concept.citation_count < 0:
            violations.append(
                Violation(record, f"negative citation_count {concept.citation_count}")
            )
        if concept.superseded_by is not None and concept.superseded_by not in g:
            violations.append(
                Violation(
                    record, f"superseded_by refers to unknown {concept.superseded_by!r}"
                )
            )
        authority = concept.authority
        if authority is not None and (
            authority.institution_level < 1 or authority.citation_frequency < 0
        ):
            violations.append(Violation(record, f"invalid authority record {authority}"))
    for index, relation in enumerate(g.relations):
        record = f"relation #{index} {relation.source!r}->{relation.target!r}"
        dangling = [n for n in (relation.source, relation.target) if n not in g]
        if dangling:
            violations.append(
                Violation(record, f"endpoint(s) not in graph: {', '.join(dangling)}")
            )
        if not (0.0 < relation.weight <= 1.0):
            violations.append(Violation(record, f"weight {relation.weight} not in (0, 1]"))
        if relation.source == relation.target:
            violations.append(Violation(record, "self-loop"))
    if g.avgdl <= 0:
        violations.append(Violation("graph", "avgdl must be positive (all texts empty)"))
    for term, count in g.df.items():
        if count > g.doc_count:
            violations.append(Violation("graph", f"df({term!r}) exceeds N"))
    return violations
