"""
Five-dimension response quality assessment.

accuracy           valid citations of background codes / citation-like fragments
comprehensiveness  background codes cited / background codes
citation           well-formed fragments / citation-like fragments
logic              mean similarity of adjacent paragraphs, rescaled
expression         professional-lexicon token ratio, rescaled

Vacuous cases: no fragments gives citation 1.0 and accuracy 1.0 only when
the background is empty as well; an empty background gives
comprehensiveness 1.0. A single paragraph has no adjacent pair and
scores logic 0.0, which asks for a stepwise answer.

Only brackets that open on a code-like token (alphanumeric start, at least
one digit) count as citation fragments, so prose such as markdown links is
left alone.
"""

import math
import re
from typing import Collection, Iterable, Optional

import numpy as np
from langchain_core.embeddings import Embeddings
from loguru import logger

from ..kg_core import KnowledgeGraph
from ..prompt_engine import PromptDocument
from ..text import jaccard, tokenize
from .models import DIMENSIONS, Deficiency, OptimizationConfig, QualityReport

# a bracket opening on a code-like token: starts alphanumeric (or §) and holds a digit
CITATION_FRAGMENT = re.compile(r"\[(?=[A-Za-z0-9§][^\[\]\n]{0,63}?\d)[^\[\]\n]{0,64}\]?")
CITATION_GRAMMAR = re.compile(r"^\[([A-Z0-9]+(?:-[A-Z0-9]+)*)\]$")
PARAGRAPH_BREAK = re.compile(r"\n\s*\n")


def citation_fragments(response: str) -> list[str]:
    return CITATION_FRAGMENT.findall(response)


def is_well_formed(fragment: str) -> bool:
    return CITATION_GRAMMAR.match(fragment) is not None


def validate_citation(fragment: str, known_codes: Collection[str]) -> bool:
    """True iff ``fragment`` is ``[<CODE>]`` and CODE is a known normalized code."""
    match = CITATION_GRAMMAR.match(fragment)
    return match is not None and match.group(1) in known_codes


def paragraphs(response: str) -> list[str]:
    return [p.strip() for p in PARAGRAPH_BREAK.split(response) if p.strip()]


def _embedding_similarity(
    a: str, b: str, embeddings: Embeddings
) -> Optional[float]:
    va = np.asarray(embeddings.embed_query(a), dtype=float)
    vb = np.asarray(embeddings.embed_query(b), dtype=float)
    if va.size == 0 or va.shape != vb.shape:
        return None
    norm = float(np.linalg.norm(va) * np.linalg.norm(vb))
    if norm == 0.0:
        return None
    return max(0.0, float(np.dot(va, vb)) / norm)


def adjacent_coherence(blocks: list[str], embeddings: Optional[Embeddings] = None) -> float:
    """Mean similarity of adjacent blocks: embedding cosine when available, token Jaccard otherwise."""
    if len(blocks) < 2:
        return 0.0
    similarities = []
    for a, b in zip(blocks, blocks[1:]):
        sim = _embedding_similarity(a, b, embeddings) if embeddings is not None else None
        if sim is None:
            sim = jaccard(frozenset(tokenize(a)), frozenset(tokenize(b)))
        similarities.append(sim)
    return math.fsum(similarities) / len(similarities)


def expression_ratio(response: str, lexicon_tokens: Iterable[str]) -> float:
    tokens = tokenize(response)
    if not tokens:
        return 0.0
    professional = frozenset(lexicon_tokens)
    return sum(1 for t in tokens if t in professional) / len(tokens)


def assess_quality(
    response: str,
    prompt: PromptDocument,
    g: KnowledgeGraph,
    cfg: OptimizationConfig,
    emb: Optional[Embeddings] = None,
    lexicon_tokens: Iterable[str] = (),
) -> QualityReport:
    background = prompt.background_codes
    known = g.codes() | background
    fragments = citation_fragments(response)
    well_formed = [f for f in fragments if is_well_formed(f)]
    cited = [f[1:-1] for f in well_formed]
    valid_background = [c for c in cited if c in background]

    if fragments:
        accuracy = len(valid_background) / len(fragments)
        citation = len(well_formed) / len(fragments)
    else:
        accuracy = 1.0 if not background else 0.0
        citation = 1.0
    covered = background & frozenset(valid_background)
    comprehensiveness = len(covered) / len(background) if background else 1.0
    logic = min(1.0, adjacent_coherence(paragraphs(response), emb) / cfg.logic_scale)
    expression = 1.0 - math.exp(
        -expression_ratio(response, lexicon_tokens) / cfg.expression_scale
    )

    scores = dict(
        accuracy=accuracy,
        comprehensiveness=comprehensiveness,
        citation=citation,
        logic=logic,
        expression=expression,
    )
    total = math.fsum(w * scores[name] for w, name in zip(cfg.weights.as_tuple(), DIMENSIONS))
    lo, hi = min(scores.values()), max(scores.values())
    total = min(hi, max(lo, total))

    diagnostics: list[Deficiency] = [
        Deficiency(f"low_{name}", f"{scores[name]:.4f}")
        for name in DIMENSIONS
        if scores[name] < cfg.dimension_threshold
    ]
    diagnostics += [Deficiency("uncited_concept", code) for code in sorted(background - covered)]
    diagnostics += [Deficiency("malformed_citation", f) for f in fragments if not is_well_formed(f)]
    diagnostics += [Deficiency("unknown_citation", f"[{c}]") for c in cited if c not in known]
    diagnostics += [
        Deficiency("citation_outside_background", f"[{c}]")
        for c in cited
        if c in known and c not in background
    ]
    report = QualityReport(
        total=total, threshold=cfg.threshold, diagnostics=tuple(diagnostics), **scores
    )
    logger.bind(trace=True).debug(f"Quality report: {report.as_dict()}")
    return report
