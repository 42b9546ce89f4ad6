from .graph import (
    KnowledgeGraph,
    concept_by_code,
    concepts_by_layer,
    hop_distances,
    neighbors,
    shortest_path,
    validate_graph,
)
from .io import load_graph, save_graph
from .models import (
    AuthorityRecord,
    ConceptId,
    LayerTag,
    LegalConcept,
    PathResult,
    Relation,
    SourceType,
    Violation,
)

__all__ = [
    "AuthorityRecord",
    "ConceptId",
    "KnowledgeGraph",
    "LayerTag",
    "LegalConcept",
    "PathResult",
    "Relation",
    "SourceType",
    "Violation",
    "concept_by_code",
    "concepts_by_layer",
    "hop_distances",
    "load_graph",
    "neighbors",
    "save_graph",
    "shortest_path",
    "validate_graph",
]
