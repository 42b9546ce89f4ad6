"""
Quality weights, optimization settings and the assessment report.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..retrieval.params import NORMALIZATION_TOLERANCE

DIMENSIONS = ("accuracy", "comprehensiveness", "citation", "logic", "expression")
ADJUSTMENT_RULES = (
    "low_comprehensiveness",
    "low_citation",
    "low_logic",
    "low_accuracy",
    "low_expression",
)


class QualityWeights(BaseModel):
    model_config = ConfigDict(frozen=True)

    w_accuracy: float = Field(0.2, ge=0.0)
    w_comprehensiveness: float = Field(0.2, ge=0.0)
    w_citation: float = Field(0.2, ge=0.0)
    w_logic: float = Field(0.2, ge=0.0)
    w_expression: float = Field(0.2, ge=0.0)

    @model_validator(mode="after")
    def _normalized(self) -> "QualityWeights":
        total = math.fsum(self.as_tuple())
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            raise ValueError(f"quality weights must sum to 1, got {total}")
        return self

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (
            self.w_accuracy,
            self.w_comprehensiveness,
            self.w_citation,
            self.w_logic,
            self.w_expression,
        )


class OptimizationConfig(BaseModel):
    """
    Assessment calibration and loop control.

    ``logic_scale`` maps mean adjacent-paragraph similarity onto [0, 1] as
    min(1, sim / logic_scale); ``expression_scale`` maps the lexicon token
    ratio r onto 1 - exp(-r / expression_scale).
    """

    model_config = ConfigDict(frozen=True)

    threshold: float = Field(0.7, gt=0.0, le=1.0)
    max_iterations: int = Field(3, ge=1)
    adjustment_rules: tuple[str, ...] = ADJUSTMENT_RULES
    background_step: int = Field(2, ge=1)
    weights: QualityWeights = Field(default_factory=QualityWeights)
    dimension_threshold: float = Field(0.6, ge=0.0, le=1.0)
    logic_scale: float = Field(0.5, gt=0.0)
    expression_scale: float = Field(0.1, gt=0.0)

    @field_validator("adjustment_rules")
    @classmethod
    def _known_rules(cls, rules: tuple[str, ...]) -> tuple[str, ...]:
        unknown = [r for r in rules if r not in ADJUSTMENT_RULES]
        if unknown:
            raise ValueError(f"unknown adjustment rules {unknown}")
        if len(set(rules)) != len(rules):
            raise ValueError(f"adjustment rules repeat: {list(rules)}")
        return rules


@dataclass(frozen=True)
class Deficiency:
    kind: str
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}" if self.detail else self.kind


@dataclass(frozen=True)
class QualityReport:
    accuracy: float
    comprehensiveness: float
    citation: float
    logic: float
    expression: float
    total: float
    threshold: float
    diagnostics: tuple[Deficiency, ...] = field(default_factory=tuple)

    @property
    def verdict(self) -> bool:
        return self.total >= self.threshold

    def scores(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in DIMENSIONS}

    def has(self, kind: str) -> bool:
        return any(d.kind == kind for d in self.diagnostics)

    def as_dict(self) -> dict:
        return {
            "scores": self.scores(),
            "total": self.total,
            "threshold": self.threshold,
            "verdict": "pass" if self.verdict else "fail",
            "diagnostics": [{"kind": d.kind, "detail": d.detail} for d in self.diagnostics],
        }


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    prompt: str
    response: str
    report: QualityReport
    applied_adjustments: tuple[str, ...] = ()
    note: Optional[str] = None

    def as_dict(self) -> dict:
        record = {
            "iteration": self.iteration,
            "prompt": self.prompt,
            "response": self.response,
            "quality": self.report.as_dict(),
            "applied_adjustments": list(self.applied_adjustments),
        }
        if self.note:
            record["note"] = self.note
        return record
