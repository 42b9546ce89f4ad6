"""
Template, background and prompt document types.
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Mapping, Optional

from ..errors import ParameterError, TemplateError
from ..kg_core import ConceptId
from ..relevance import RelevanceBreakdown

TASK_DEFINITION = "## TASK DEFINITION"
KNOWLEDGE_BACKGROUND = "## KNOWLEDGE BACKGROUND"
REASONING_GUIDANCE = "## REASONING GUIDANCE"
EMPTY_BACKGROUND = "No relevant legal knowledge was retrieved for this query."
WEIGHT_TOLERANCE = 1e-9


class RunMode(str, Enum):
    BASELINE = "baseline"
    TRADITIONAL = "traditional"
    COMPLETE = "complete"


class Toggle(str, Enum):
    TD = "TD"
    KB = "KB"
    RG = "RG"
    DO = "DO"
    LCM = "LCM"
    SVM = "SVM"

    @classmethod
    def parse_list(cls, raw: str) -> frozenset["Toggle"]:
        """Parse a comma separated toggle list such as ``"KB,LCM"``."""
        names = [part.strip().upper() for part in raw.split(",") if part.strip()]
        try:
            return frozenset(cls(name) for name in names)
        except ValueError:
            raise ParameterError(
                f"unknown toggle in {raw!r}; expected {', '.join(t.value for t in cls)}"
            ) from None


ALL_TOGGLES = frozenset(Toggle)


def mode_toggles(mode: RunMode) -> frozenset[Toggle]:
    """Components a mode enables before any ``--disable``."""
    if mode == RunMode.BASELINE:
        return frozenset()
    if mode == RunMode.TRADITIONAL:
        return frozenset({Toggle.KB})
    return ALL_TOGGLES


def resolve_toggles(mode: RunMode, disabled: Iterable[Toggle] = ()) -> frozenset[Toggle]:
    return mode_toggles(mode) - frozenset(disabled)


@dataclass(frozen=True)
class FeatureDimension:
    name: str
    weight: float
    df: int
    alpha: float = 0.0
    vocabulary: tuple[str, ...] = ()


@dataclass(frozen=True)
class ReasoningPathTemplate:
    steps: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.steps) < 2:
            raise TemplateError(f"a reasoning path needs at least 2 steps, got {len(self.steps)}")
        if len(set(self.steps)) != len(self.steps):
            raise TemplateError(f"reasoning step names must be unique: {list(self.steps)}")


@dataclass(frozen=True)
class TaskTemplate:
    id: str
    dimension_vectors: Mapping[str, tuple[float, ...]]
    role_preamble: str
    reasoning_path: ReasoningPathTemplate
    spec_term_counts: Mapping[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class TemplateSet:
    """
    Everything a ``.templates.json`` file declares.

    ``n`` is the corpus size used in the per-dimension idf factor ln(N/df_j).
    """

    dimensions: tuple[FeatureDimension, ...]
    n: int
    templates: tuple[TaskTemplate, ...]
    generic_template_id: Optional[str] = None
    score_floor: float = 0.0

    def __post_init__(self) -> None:
        if not self.templates:
            raise TemplateError("template set holds no templates")
        if self.n < 1:
            raise TemplateError(f"N must be >= 1, got {self.n}")
        total = math.fsum(d.weight for d in self.dimensions)
        if self.dimensions and abs(total - 1.0) > WEIGHT_TOLERANCE:
            raise TemplateError(f"dimension weights must sum to 1, got {total}")
        names = [d.name for d in self.dimensions]
        if len(set(names)) != len(names):
            raise TemplateError(f"duplicate dimension names: {names}")
        for d in self.dimensions:
            if d.weight < 0 or d.alpha < 0:
                raise TemplateError(f"dimension {d.name!r}: weight and alpha must be >= 0")
            if not 1 <= d.df <= self.n:
                raise TemplateError(f"dimension {d.name!r}: df {d.df} not in [1, {self.n}]")
        ids = [t.id for t in self.templates]
        if len(set(ids)) != len(ids):
            raise TemplateError(f"duplicate template ids: {ids}")
        if self.generic_template_id is not None and self.generic_template_id not in ids:
            raise TemplateError(f"generic template {self.generic_template_id!r} is not defined")
        for t in self.templates:
            for d in self.dimensions:
                vector = t.dimension_vectors.get(d.name)
                if vector is not None and len(vector) != len(d.vocabulary):
                    raise TemplateError(
                        f"template {t.id!r}: vector for {d.name!r} has {len(vector)} "
                        f"entries, vocabulary has {len(d.vocabulary)}"
                    )

    def template(self, template_id: str) -> TaskTemplate:
        for t in self.templates:
            if t.id == template_id:
                return t
        raise TemplateError(f"unknown template {template_id!r}")


@dataclass(frozen=True)
class QueryFeatures:
    vectors: Mapping[str, tuple[float, ...]]
    spec_terms: Mapping[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class BackgroundEntry:
    """One knowledge item shown to the model; ``snippet`` always carries the code."""

    code: Optional[str]
    snippet: str
    concept_id: Optional[ConceptId] = None
    breakdown: Optional[RelevanceBreakdown] = None
    provenance: str = "graph"
    authority: Optional[float] = None


@dataclass(frozen=True)
class PromptDocument:
    query_text: str
    config_mode: RunMode
    toggles: frozenset[Toggle]
    task_definition: str = ""
    knowledge_background: tuple[BackgroundEntry, ...] = ()
    reasoning_guidance: tuple[str, ...] = ()
    instructions: tuple[str, ...] = ()
    applied_adjustments: tuple[str, ...] = ()
    template_id: Optional[str] = None
    template_score: Optional[float] = None

    @property
    def disabled(self) -> frozenset[Toggle]:
        return mode_toggles(self.config_mode) - self.toggles

    @property
    def background_codes(self) -> frozenset[str]:
        return frozenset(e.code for e in self.knowledge_background if e.code)

    def sections(self) -> list[str]:
        sections: list[str] = []
        if Toggle.TD in self.toggles and self.task_definition:
            sections.append(f"{TASK_DEFINITION}\n{self.task_definition}")
        if Toggle.KB in self.toggles:
            lines = [
                f"{i}. {entry.snippet}"
                for i, entry in enumerate(self.knowledge_background, start=1)
            ]
            sections.append("\n".join([KNOWLEDGE_BACKGROUND] + (lines or [EMPTY_BACKGROUND])))
        guidance: list[str] = []
        if Toggle.RG in self.toggles:
            guidance += [
                f"Step {i}: {step}" for i, step in enumerate(self.reasoning_guidance, start=1)
            ]
            guidance += list(self.instructions)
        if guidance:
            sections.append("\n".join([REASONING_GUIDANCE] + guidance))
        return sections

    def render(self) -> str:
        return "\n\n".join(self.sections() + [self.query_text])

    def evolve(self, **changes) -> "PromptDocument":
        return replace(self, **changes)
