"""
Retrieval parameters.
"""

import math
from typing import Iterable

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import ParameterError

NORMALIZATION_TOLERANCE = 1e-9
STRATEGIES = ("cm", "vs", "pi", "tm")


class FusionWeights(BaseModel):
    """Convex weights for code match, vector similarity, path inference and term match."""

    model_config = ConfigDict(frozen=True)

    cm: float = Field(0.3, ge=0.0)
    vs: float = Field(0.2, ge=0.0)
    pi: float = Field(0.25, ge=0.0)
    tm: float = Field(0.25, ge=0.0)

    @model_validator(mode="after")
    def _normalized(self) -> "FusionWeights":
        total = math.fsum(self.as_tuple())
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            raise ValueError(f"fusion weights must sum to 1, got {total}")
        return self

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.cm, self.vs, self.pi, self.tm)

    def without(self, strategies: Iterable[str]) -> "FusionWeights":
        """Zero the named strategies and renormalize the remaining weights."""
        dropped = set(strategies)
        unknown = dropped - set(STRATEGIES)
        if unknown:
            raise ParameterError(f"unknown strategies {sorted(unknown)}")
        kept = {
            name: (0.0 if name in dropped else getattr(self, name))
            for name in STRATEGIES
        }
        total = math.fsum(kept.values())
        if total <= 0:
            raise ParameterError(
                f"disabling {sorted(dropped)} leaves no fusion weight to renormalize"
            )
        return FusionWeights(**{name: w / total for name, w in kept.items()})


class MatchParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    gamma: float = Field(0.7, ge=0.0, le=1.0)
    lambda_decay: float = Field(0.8, gt=0.0, lt=1.0)
    alpha1: float = Field(0.5, ge=0.0)
    alpha2: float = Field(0.3, ge=0.0)
    alpha3: float = Field(0.2, ge=0.0)
    fusion_weights: FusionWeights = Field(default_factory=FusionWeights)
    ilt_cap: float = Field(math.log(1000.0), gt=0.0)
    diversity_lambda: float = Field(0.7, ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _alphas_normalized(self) -> "MatchParams":
        total = math.fsum((self.alpha1, self.alpha2, self.alpha3))
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            raise ValueError(f"alpha1 + alpha2 + alpha3 must equal 1, got {total}")
        return self

    def without(self, strategies: Iterable[str]) -> "MatchParams":
        return self.model_copy(
            update={"fusion_weights": self.fusion_weights.without(strategies)}
        )

    def with_fusion(self, weights: FusionWeights) -> "MatchParams":
        return self.model_copy(update={"fusion_weights": weights})
