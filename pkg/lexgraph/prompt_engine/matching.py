"""
Multi-dimensional query-to-template matching.

score(Q, T_i) = sum_j w_j * cos(Q_j, T_ij) * ln(N / df_j) * (1 + alpha_j * SpecTerms(j))
"""

import math
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from loguru import logger

from ..errors import ParameterError, TemplateError
from ..retrieval import Query
from .models import FeatureDimension, QueryFeatures, TaskTemplate, TemplateSet


def _occurrences(tokens: Sequence[str], term: str) -> int:
    needle = term.split()
    n = len(needle)
    if n == 0:
        return 0
    return sum(1 for i in range(len(tokens) - n + 1) if list(tokens[i : i + n]) == needle)


def extract_features(
    q: Query, template_set: TemplateSet, lexicon: Iterable[str] = ()
) -> QueryFeatures:
    """
    Bag-of-tokens projection of the query onto each dimension's vocabulary.

    SpecTerms(j) counts the query's occurrences of vocabulary entries of
    dimension j that are also professional lexicon terms.
    """
    professional = frozenset(lexicon)
    vectors: dict[str, tuple[float, ...]] = {}
    spec_terms: dict[str, int] = {}
    for d in template_set.dimensions:
        counts = [_occurrences(q.tokens, term) for term in d.vocabulary]
        vectors[d.name] = tuple(float(c) for c in counts)
        spec_terms[d.name] = sum(
            c for term, c in zip(d.vocabulary, counts) if term in professional
        )
    return QueryFeatures(vectors=vectors, spec_terms=spec_terms)


def _cosine_or_zero(a: Sequence[float], b: Sequence[float]) -> float:
    va, vb = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    if va.shape != vb.shape:
        raise ParameterError(f"feature dimension mismatch: {va.shape} vs {vb.shape}")
    norm = float(np.linalg.norm(va) * np.linalg.norm(vb))
    if norm == 0.0:
        return 0.0
    return float(np.dot(va, vb)) / norm


def dimension_score(
    d: FeatureDimension, n: int, query_vector: Sequence[float], template_vector: Sequence[float], spec_terms: int
) -> float:
    return (
        d.weight
        * _cosine_or_zero(query_vector, template_vector)
        * math.log(n / d.df)
        * (1.0 + d.alpha * spec_terms)
    )


def task_match_score(q: QueryFeatures, t: TaskTemplate, template_set: TemplateSet) -> float:
    """
    A template's ``spec_term_counts`` entry for a dimension, when present,
    replaces the count extracted from the query.
    """
    total = []
    for d in template_set.dimensions:
        if d.name not in q.vectors or d.name not in t.dimension_vectors:
            raise ParameterError(f"no feature vector for dimension {d.name!r}")
        spec = t.spec_term_counts.get(d.name, q.spec_terms.get(d.name, 0))
        total.append(
            dimension_score(d, template_set.n, q.vectors[d.name], t.dimension_vectors[d.name], spec)
        )
    return math.fsum(total)


def argmax_template(scored: Sequence[tuple[TaskTemplate, float]]) -> tuple[TaskTemplate, float]:
    """Highest score; ties go to the smallest template id."""
    if not scored:
        raise TemplateError("cannot select from an empty template list")
    return min(scored, key=lambda item: (-item[1], item[0].id))


def select_task_template(
    q: QueryFeatures,
    template_set: TemplateSet,
    templates: Optional[Sequence[TaskTemplate]] = None,
    transform: Optional[Callable[[float], float]] = None,
) -> tuple[TaskTemplate, float]:
    """
    Best matching template, or the generic template when the best score is
    below the set's floor. ``transform`` is applied to every score (and the
    floor) before comparison.
    """
    candidates = list(template_set.templates if templates is None else templates)
    if not candidates:
        raise TemplateError("cannot select from an empty template list")
    f = transform or (lambda x: x)
    scored = [(t, task_match_score(q, t, template_set)) for t in candidates]
    best, raw = argmax_template([(t, f(s)) for t, s in scored])
    score = dict((t.id, s) for t, s in scored)[best.id]
    if raw < f(template_set.score_floor) and template_set.generic_template_id is not None:
        generic = template_set.template(template_set.generic_template_id)
        logger.info(
            f"Best template {best.id!r} scored {score:.4f} below floor "
            f"{template_set.score_floor}; using generic {generic.id!r}"
        )
        return generic, task_match_score(q, generic, template_set)
    logger.info(f"Selected task template {best.id!r} (score {score:.4f})")
    return best, score
