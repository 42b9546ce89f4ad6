"""
Record types of the three-layer legal knowledge graph.
"""

from dataclasses import dataclass, field
from datetime import date
from enum import Enum
from typing import Optional

ConceptId = str


class LayerTag(str, Enum):
    """Ontology (abstract legal categories), Representation (norms, doctrines), Instance (cases)."""

    ONTOLOGY = "Ontology"
    REPRESENTATION = "Representation"
    INSTANCE = "Instance"

    @classmethod
    def parse(cls, raw: str) -> "LayerTag":
        for member in cls:
            if member.value.lower() == str(raw).strip().lower():
                return member
        raise ValueError(f"unknown layer {raw!r}")


class SourceType(str, Enum):
    STATUTE = "Statute"
    REGULATION = "Regulation"
    CASE_LAW = "CaseLaw"
    COMMENTARY = "Commentary"

    @property
    def rank(self) -> int:
        return _SOURCE_RANK[self]

    @classmethod
    def parse(cls, raw: str) -> "SourceType":
        for member in cls:
            if member.value.lower() == str(raw).strip().lower():
                return member
        raise ValueError(f"unknown source type {raw!r}")


_SOURCE_RANK = {
    SourceType.STATUTE: 4,
    SourceType.REGULATION: 3,
    SourceType.CASE_LAW: 2,
    SourceType.COMMENTARY: 1,
}


@dataclass(frozen=True)
class AuthorityRecord:
    source_type: SourceType
    institution_level: int = 1
    citation_frequency: int = 0


@dataclass(frozen=True)
class LegalConcept:
    """
    A node of the knowledge graph.

    ``text`` is the document body used for BM25+ statistics; ``terms`` are the
    professional terms with their importance weights used by term matching.
    """

    id: ConceptId
    layer: LayerTag
    title: str = ""
    text: str = ""
    code: Optional[str] = None
    terms: tuple[tuple[str, float], ...] = ()
    embedding: Optional[tuple[float, ...]] = None
    jurisdictions: frozenset[str] = field(default_factory=frozenset)
    effective_date: Optional[date] = None
    superseded_by: Optional[ConceptId] = None
    citation_count: int = 0
    authority: Optional[AuthorityRecord] = None


@dataclass(frozen=True)
class Relation:
    source: ConceptId
    target: ConceptId
    rel_type: str
    weight: float

    def other(self, node: ConceptId) -> ConceptId:
        return self.target if node == self.source else self.source


@dataclass(frozen=True)
class PathResult:
    """Hop-minimal path; ``relations`` are in traversal order starting at the source."""

    length: int
    relations: tuple[Relation, ...]
    nodes: tuple[ConceptId, ...]

    @property
    def weight_sum(self) -> float:
        return sum(r.weight for r in self.relations)


@dataclass(frozen=True)
class Violation:
    record: str
    message: str

    def __str__(self) -> str:
        return f"{self.record}: {self.message}"
