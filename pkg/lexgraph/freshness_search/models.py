"""
External search results and authority/merge parameters.
"""

import math
from dataclasses import dataclass
from datetime import date
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import ParameterError
from ..kg_core import SourceType
from ..retrieval import normalize_code
from ..retrieval.params import NORMALIZATION_TOLERANCE


@dataclass(frozen=True)
class SearchResult:
    source_type: SourceType
    jurisdiction: str
    effective_date: date
    text: str
    institution_level: int = 1
    citation_frequency: int = 0
    superseded: bool = False
    code: Optional[str] = None
    title: str = ""

    def __post_init__(self) -> None:
        if self.institution_level < 1:
            raise ParameterError(f"institution_level must be >= 1, got {self.institution_level}")
        if self.citation_frequency < 0:
            raise ParameterError(
                f"citation_frequency must be >= 0, got {self.citation_frequency}"
            )

    @classmethod
    def from_record(cls, record: dict[str, Any]) -> "SearchResult":
        code = record.get("code")
        return cls(
            source_type=SourceType.parse(record["source_type"]),
            jurisdiction=str(record["jurisdiction"]),
            effective_date=date.fromisoformat(record["effective_date"]),
            text=str(record.get("text", "")),
            institution_level=int(record.get("institution_level", 1)),
            citation_frequency=int(record.get("citation_frequency", 0)),
            superseded=bool(record.get("superseded", False)),
            code=normalize_code(code) if code else None,
            title=str(record.get("title", "")),
        )

    def to_record(self) -> dict[str, Any]:
        record: dict[str, Any] = {
            "source_type": self.source_type.value,
            "jurisdiction": self.jurisdiction,
            "effective_date": self.effective_date.isoformat(),
            "text": self.text,
            "institution_level": self.institution_level,
            "citation_frequency": self.citation_frequency,
            "superseded": self.superseded,
            "title": self.title,
        }
        if self.code is not None:
            record["code"] = self.code
        return record


class AuthorityWeights(BaseModel):
    """Weights of source type, institution level and citation frequency."""

    model_config = ConfigDict(frozen=True)

    source_type: float = Field(1.0 / 3.0, ge=0.0)
    institution: float = Field(1.0 / 3.0, ge=0.0)
    citations: float = Field(1.0 / 3.0, ge=0.0)

    @model_validator(mode="after")
    def _normalized(self) -> "AuthorityWeights":
        total = math.fsum(self.as_tuple())
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            raise ValueError(f"authority weights must sum to 1, got {total}")
        return self

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.source_type, self.institution, self.citations)


class MergeParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    weights: AuthorityWeights = Field(default_factory=AuthorityWeights)
    graph_default_authority: float = Field(0.5, ge=0.0, le=1.0)
