"""
Line-delimited ``.kg.jsonl`` codec.

Each line is one JSON object with a ``kind`` of ``concept`` or ``relation``
(an optional ``meta`` record may declare ``avgdl`` / ``embedding_dim``, which
are checked against the recomputed values).
"""

import json
import math
from datetime import date
from typing import Any, BinaryIO, Iterable, Optional, Union

from loguru import logger

from ..errors import GraphLoadError
from .graph import KnowledgeGraph, validate_graph
from .models import AuthorityRecord, LayerTag, LegalConcept, Relation, SourceType

AVGDL_TOLERANCE = 1e-9


def concept_from_record(record: dict[str, Any]) -> LegalConcept:
    cid = record.get("id")
    if not isinstance(cid, str) or not cid.strip():
        raise ValueError("concept id must be a non-empty string")
    embedding = record.get("embedding")
    authority = record.get("authority")
    effective = record.get("effective_date")
    return LegalConcept(
        id=cid,
        layer=LayerTag.parse(record["layer"]),
        title=str(record.get("title", "")),
        text=str(record.get("text", "")),
        code=record.get("code") or None,
        terms=tuple(
            (str(item["term"]), float(item["weight"]))
            for item in record.get("terms", [])
        ),
        embedding=(
            tuple(float(x) for x in embedding) if embedding is not None else None
        ),
        jurisdictions=frozenset(str(j) for j in record.get("jurisdictions", [])),
        effective_date=date.fromisoformat(effective) if effective else None,
        superseded_by=record.get("superseded_by") or None,
        citation_count=int(record.get("citation_count", 0)),
        authority=(
            AuthorityRecord(
                source_type=SourceType.parse(authority["source_type"]),
                institution_level=int(authority.get("institution_level", 1)),
                citation_frequency=int(authority.get("citation_frequency", 0)),
            )
            if authority
            else None
        ),
    )


def concept_to_record(concept: LegalConcept) -> dict[str, Any]:
    record: dict[str, Any] = {
        "kind": "concept",
        "id": concept.id,
        "layer": concept.layer.value,
        "title": concept.title,
        "text": concept.text,
        "terms": [{"term": t, "weight": w} for t, w in concept.terms],
        "jurisdictions": sorted(concept.jurisdictions),
        "citation_count": concept.citation_count,
    }
    if concept.code is not None:
        record["code"] = concept.code
    if concept.embedding is not None:
        record["embedding"] = list(concept.embedding)
    if concept.effective_date is not None:
        record["effective_date"] = concept.effective_date.isoformat()
    if concept.superseded_by is not None:
        record["superseded_by"] = concept.superseded_by
    if concept.authority is not None:
        record["authority"] = {
            "source_type": concept.authority.source_type.value,
            "institution_level": concept.authority.institution_level,
            "citation_frequency": concept.authority.citation_frequency,
        }
    return record


def relation_from_record(record: dict[str, Any]) -> Relation:
    return Relation(
        source=str(record["from"]),
        target=str(record["to"]),
        rel_type=str(record.get("rel_type", "related_to")),
        weight=float(record["weight"]),
    )


def relation_to_record(relation: Relation) -> dict[str, Any]:
    return {
        "kind": "relation",
        "from": relation.source,
        "to": relation.target,
        "rel_type": relation.rel_type,
        "weight": relation.weight,
    }


def load_graph(
    source: Union[BinaryIO, Iterable[bytes]], source_name: Optional[str] = None
) -> KnowledgeGraph:
    """
    Parse and validate a knowledge graph stream.

    Raises:
        GraphLoadError: on malformed records, duplicate ids, dangling relation
            endpoints, embedding dimension mismatches, an empty stream or any
            other invariant violation. The message carries the line number.
    """
    concepts: list[LegalConcept] = []
    concept_lines: dict[str, int] = {}
    relations: list[tuple[int, Relation]] = []
    declared: dict[str, Any] = {}
    embedding_dim: Optional[int] = None

    for lineno, raw in enumerate(source, start=1):
        try:
            line = raw.decode("utf-8").strip()
        except UnicodeDecodeError as e:
            raise GraphLoadError(f"invalid UTF-8: {e}", lineno, source_name) from e
        if not line:
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise GraphLoadError(f"malformed record: {e.msg}", lineno, source_name) from e
        if not isinstance(record, dict):
            raise GraphLoadError("record must be an object", lineno, source_name)
        kind = record.get("kind")
        try:
            if kind == "concept":
                concept = concept_from_record(record)
                if concept.id in concept_lines:
                    raise GraphLoadError(
                        f"duplicate concept id {concept.id!r} "
                        f"(first defined on line {concept_lines[concept.id]})",
                        lineno,
                        source_name,
                    )
                if concept.embedding is not None:
                    dim = declared.get("embedding_dim") or embedding_dim
                    if dim is None:
                        embedding_dim = len(concept.embedding)
                    elif len(concept.embedding) != dim:
                        raise GraphLoadError(
                            f"embedding dimension {len(concept.embedding)} of "
                            f"{concept.id!r} != {dim}",
                            lineno,
                            source_name,
                        )
                concept_lines[concept.id] = lineno
                concepts.append(concept)
            elif kind == "relation":
                relations.append((lineno, relation_from_record(record)))
            elif kind == "meta":
                declared.update(record)
            else:
                raise GraphLoadError(f"unknown record kind {kind!r}", lineno, source_name)
        except GraphLoadError:
            raise
        except (KeyError, TypeError, ValueError) as e:
            raise GraphLoadError(f"malformed {kind} record: {e}", lineno, source_name) from e

    if not concepts:
        raise GraphLoadError("empty graph", source=source_name)
    for lineno, relation in relations:
        for endpoint in (relation.source, relation.target):
            if endpoint not in concept_lines:
                raise GraphLoadError(
                    f"relation endpoint {endpoint!r} is not a known concept",
                    lineno,
                    source_name,
                )

    graph = KnowledgeGraph(
        concepts,
        [relation for _, relation in relations],
        embedding_dim=declared.get("embedding_dim") or embedding_dim,
    )
    if "avgdl" in declared and not math.isclose(
        float(declared["avgdl"]), graph.avgdl, rel_tol=0.0, abs_tol=AVGDL_TOLERANCE
    ):
        raise GraphLoadError(
            f"declared avgdl {declared['avgdl']} != recomputed {graph.avgdl}",
            source=source_name,
        )
    violations = validate_graph(graph)
    if violations:
        raise GraphLoadError(
            "; ".join(str(v) for v in violations), source=source_name
        )
    logger.info(
        f"Loaded graph{f' {source_name}' if source_name else ''}: "
        f"N={graph.doc_count}, relations={len(graph.relations)}, avgdl={graph.avgdl:.3f}"
    )
    return graph


def save_graph(g: KnowledgeGraph, sink: BinaryIO) -> int:
    """Write ``g`` as ``.kg.jsonl`` records and return the number of records written."""
    violations = validate_graph(g)
    if violations:
        raise GraphLoadError(
            "cannot save invalid graph: " + "; ".join(str(v) for v in violations)
        )
    records = [concept_to_record(g.concepts[cid]) for cid in g.concepts]
    records += [relation_to_record(r) for r in g.relations]
    try:
        for record in records:
            line = json.dumps(record, ensure_ascii=False, sort_keys=True)
            sink.write(line.encode("utf-8") + b"\n")
    except OSError as e:
        logger.error(f"Error writing graph: {e}")
        raise GraphLoadError(f"sink write failure: {e}") from e
    return len(records)
