from .adjustment import (
    CITATION_BLOCK,
    GROUNDING_BLOCK,
    STEP_BLOCK_HEADER,
    TERMINOLOGY_BLOCK,
    BackgroundExpander,
    adjust_prompt,
    apply_rule,
)
from .assessment import (
    adjacent_coherence,
    assess_quality,
    citation_fragments,
    expression_ratio,
    is_well_formed,
    paragraphs,
    validate_citation,
)
from .loop import Assessor, OptimizationResult, OptimizationSession, optimize
from .models import (
    ADJUSTMENT_RULES,
    DIMENSIONS,
    Deficiency,
    IterationRecord,
    OptimizationConfig,
    QualityReport,
    QualityWeights,
)
from .providers import (
    API_KEY_ENV,
    HttpChatModel,
    ScriptedChatModel,
    load_mock_script,
    ollama_chat_model,
)

__all__ = [
    "ADJUSTMENT_RULES",
    "API_KEY_ENV",
    "CITATION_BLOCK",
    "DIMENSIONS",
    "GROUNDING_BLOCK",
    "STEP_BLOCK_HEADER",
    "TERMINOLOGY_BLOCK",
    "Assessor",
    "BackgroundExpander",
    "Deficiency",
    "HttpChatModel",
    "IterationRecord",
    "OptimizationConfig",
    "OptimizationResult",
    "OptimizationSession",
    "QualityReport",
    "QualityWeights",
    "ScriptedChatModel",
    "adjacent_coherence",
    "adjust_prompt",
    "apply_rule",
    "assess_quality",
    "citation_fragments",
    "expression_ratio",
    "is_well_formed",
    "load_mock_script",
    "ollama_chat_model",
    "optimize",
    "paragraphs",
    "validate_citation",
]
