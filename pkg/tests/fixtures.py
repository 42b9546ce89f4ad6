"""
Shared builders for the test suite.
"""

import math
import random
from pathlib import Path
from typing import Optional

from lexgraph.kg_core import KnowledgeGraph, LayerTag, LegalConcept, Relation, load_graph

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
SAMPLE_GRAPH = DATA_DIR / "sample.kg.jsonl"
SAMPLE_TERMS = DATA_DIR / "sample.terms.tsv"
SAMPLE_TEMPLATES = DATA_DIR / "sample.templates.json"
SAMPLE_SEARCH = DATA_DIR / "sample.search.json"
SAMPLE_MOCK = DATA_DIR / "sample.mock.json"
SAMPLE_CONFIG = DATA_DIR / "lexgraph.toml"


def concept(
    cid: str,
    text: str = "legal text",
    layer: LayerTag = LayerTag.REPRESENTATION,
    **kwargs,
) -> LegalConcept:
    return LegalConcept(id=cid, layer=layer, text=text, **kwargs)


def sample_graph() -> KnowledgeGraph:
    with open(SAMPLE_GRAPH, "rb") as handle:
        return load_graph(handle, source_name=str(SAMPLE_GRAPH))


def chain_graph(weights: tuple[float, ...] = (0.9, 0.8, 0.7)) -> KnowledgeGraph:
    """a - b - c - d ... with the given relation weights."""
    ids = [chr(ord("a") + i) for i in range(len(weights) + 1)]
    concepts = [concept(cid, text=f"text of {cid}") for cid in ids]
    relations = [
        Relation(ids[i], ids[i + 1], "related_to", w) for i, w in enumerate(weights)
    ]
    return KnowledgeGraph(concepts, relations)


_WORDS = ("fault", "damage", "contract", "liability", "tort", "lease", "duty", "loss")


def random_graph(
    rng: random.Random,
    max_nodes: int = 8,
    edge_probability: float = 0.35,
    embedding_dim: Optional[int] = None,
) -> KnowledgeGraph:
    n = rng.randint(1, max_nodes)
    ids = [f"n{i}" for i in range(n)]
    concepts = []
    for cid in ids:
        words = " ".join(rng.choice(_WORDS) for _ in range(rng.randint(1, 6)))
        concepts.append(
            LegalConcept(
                id=cid,
                layer=rng.choice(list(LayerTag)),
                title=cid.upper(),
                text=words,
                code=f"CC-{rng.randint(1, 50)}" if rng.random() < 0.5 else None,
                terms=tuple((w, round(rng.uniform(0.1, 1.0), 3)) for w in words.split()[:2]),
                embedding=(
                    tuple(round(rng.uniform(0.1, 1.0), 3) for _ in range(embedding_dim))
                    if embedding_dim
                    else None
                ),
                jurisdictions=frozenset(rng.sample(["FR", "BE", "DE"], rng.randint(0, 2))),
                citation_count=rng.randint(0, 100),
            )
        )
    relations = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_probability:
                a, b = (ids[i], ids[j]) if rng.random() < 0.5 else (ids[j], ids[i])
                relations.append(
                    Relation(a, b, rng.choice(["subsumes", "applies"]), round(rng.uniform(0.05, 1.0), 3))
                )
    return KnowledgeGraph(concepts, relations)


def simple_paths(g: KnowledgeGraph, a: str, b: str) -> list[list[str]]:
    """Every simple undirected path from ``a`` to ``b``, by exhaustive search."""
    found: list[list[str]] = []

    def walk(path: list[str]) -> None:
        node = path[-1]
        if node == b:
            found.append(list(path))
            return
        for other in sorted(g.undirected.neighbors(node)):
            if other not in path:
                path.append(other)
                walk(path)
                path.pop()

    walk([a])
    return found


def best_shortest_path(g: KnowledgeGraph, a: str, b: str) -> Optional[tuple[float, tuple[str, ...]]]:
    """(weight sum, nodes) of the heaviest hop-minimal path, smallest node sequence on ties."""
    paths = simple_paths(g, a, b)
    if not paths:
        return None
    shortest = min(len(p) for p in paths)
    best = None
    for nodes in paths:
        if len(nodes) != shortest:
            continue
        total = math.fsum(
            max(r.weight for r in g.relations if {r.source, r.target} == {u, v})
            for u, v in zip(nodes, nodes[1:])
        )
        key = (-total, tuple(nodes))
        if best is None or key < best:
            best = key
    return -best[0], best[1]
