"""
The four matching strategies and their weighted fusion.
"""

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import ParameterError
from ..kg_core import ConceptId, KnowledgeGraph, shortest_path
from .params import NORMALIZATION_TOLERANCE, MatchParams
from .query import Query


@dataclass(frozen=True)
class StrategyScores:
    cm: float
    vs: float
    pi: float
    tm: float
    fused: float

    def as_dict(self) -> dict[str, float]:
        return {"cm": self.cm, "vs": self.vs, "pi": self.pi, "tm": self.tm, "fused": self.fused}


def cosine(a: Sequence[float], b: Sequence[float]) -> float:
    """Raw cosine of the angle between ``a`` and ``b``, in [-1, 1]."""
    va, vb = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    if va.ndim != 1 or va.shape != vb.shape or va.size == 0:
        raise ParameterError(f"dimension mismatch: {va.shape} vs {vb.shape}")
    na, nb = float(np.linalg.norm(va)), float(np.linalg.norm(vb))
    if na == 0.0 or nb == 0.0:
        raise ParameterError("cosine undefined for a zero vector")
    return float(np.clip(np.dot(va, vb) / (na * nb), -1.0, 1.0))


def vector_similarity(a: Sequence[float], b: Sequence[float]) -> float:
    """Vector-similarity strategy score: cosine floored at 0."""
    return max(0.0, cosine(a, b))


def path_inference(
    g: KnowledgeGraph, c: ConceptId, q: Query, p: MatchParams
) -> float:
    """
    Best decayed path weight from ``c`` to any concept identified in the query.

    A concept named by the query scores 1.0.
    """
    g.require(c)
    if not q.concept_ids:
        return 0.0
    for target in q.concept_ids:
        g.require(target)
    if c in q.concept_ids:
        return 1.0
    best = 0.0
    for target in sorted(q.concept_ids):
        path = shortest_path(g, c, target)
        if path is None:
            continue
        best = max(best, (p.lambda_decay**path.length) * path.weight_sum)
    return min(1.0, max(0.0, best))


def fuse_scores(cm: float, vs: float, pi: float, tm: float, p: MatchParams) -> StrategyScores:
    weights = p.fusion_weights.as_tuple()
    if any(w < 0 for w in weights) or abs(math.fsum(weights) - 1.0) > NORMALIZATION_TOLERANCE:
        raise ParameterError(f"fusion weights must be >= 0 and sum to 1, got {weights}")
    scores = (cm, vs, pi, tm)
    if any(not 0.0 <= s <= 1.0 for s in scores):
        raise ParameterError(f"strategy scores must lie in [0, 1], got {scores}")
    fused = math.fsum(w * s for w, s in zip(weights, scores))
    # rounding must not push a convex combination outside its inputs
    fused = min(max(fused, min(scores)), max(scores))
    return StrategyScores(cm=cm, vs=vs, pi=pi, tm=tm, fused=fused)
