from .assembly import (
    assemble_prompt,
    citation_code,
    graph_background,
    graph_entry,
    render_snippet,
)
from .matching import argmax_template, extract_features, select_task_template, task_match_score
from .models import (
    ALL_TOGGLES,
    EMPTY_BACKGROUND,
    KNOWLEDGE_BACKGROUND,
    REASONING_GUIDANCE,
    TASK_DEFINITION,
    BackgroundEntry,
    FeatureDimension,
    PromptDocument,
    QueryFeatures,
    ReasoningPathTemplate,
    RunMode,
    TaskTemplate,
    TemplateSet,
    Toggle,
    mode_toggles,
    resolve_toggles,
)
from .templates import load_templates

__all__ = [
    "ALL_TOGGLES",
    "EMPTY_BACKGROUND",
    "KNOWLEDGE_BACKGROUND",
    "REASONING_GUIDANCE",
    "TASK_DEFINITION",
    "BackgroundEntry",
    "FeatureDimension",
    "PromptDocument",
    "QueryFeatures",
    "ReasoningPathTemplate",
    "RunMode",
    "TaskTemplate",
    "TemplateSet",
    "Toggle",
    "argmax_template",
    "assemble_prompt",
    "citation_code",
    "extract_features",
    "graph_background",
    "graph_entry",
    "load_templates",
    "mode_toggles",
    "render_snippet",
    "resolve_toggles",
    "select_task_template",
    "task_match_score",
]
