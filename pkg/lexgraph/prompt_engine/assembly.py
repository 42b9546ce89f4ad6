"""
Three-stage prompt assembly.
"""

from typing import Iterable, Optional, Sequence

from loguru import logger

from ..kg_core import ConceptId, KnowledgeGraph, LegalConcept
from ..relevance import RelevanceBreakdown
from ..retrieval import Query, normalize_code
from .models import BackgroundEntry, PromptDocument, RunMode, TaskTemplate, Toggle

SNIPPET_TEXT_LIMIT = 400


def citation_code(concept: LegalConcept) -> str:
    """The code a concept is cited by; concepts without one are cited by their normalized id."""
    return concept.code or normalize_code(concept.id)


def render_snippet(code: Optional[str], title: str, text: str) -> str:
    body = " ".join(text.split())
    if len(body) > SNIPPET_TEXT_LIMIT:
        body = body[: SNIPPET_TEXT_LIMIT - 3].rstrip() + "..."
    head = f"[{code}] " if code else ""
    if title:
        return f"{head}{title}: {body}" if body else f"{head}{title}"
    return f"{head}{body}"


def graph_entry(
    g: KnowledgeGraph, concept_id: ConceptId, breakdown: Optional[RelevanceBreakdown] = None
) -> BackgroundEntry:
    concept = g.concept(concept_id)
    code = citation_code(concept)
    return BackgroundEntry(
        code=code,
        snippet=render_snippet(code, concept.title, concept.text),
        concept_id=concept_id,
        breakdown=breakdown,
        provenance="graph",
    )


def graph_background(
    g: KnowledgeGraph, ranked: Iterable[tuple[ConceptId, RelevanceBreakdown]]
) -> list[BackgroundEntry]:
    """Background entries in ``rank_background`` order."""
    return [graph_entry(g, cid, breakdown) for cid, breakdown in ranked]


def assemble_prompt(
    q: Query,
    t: Optional[TaskTemplate],
    background: Sequence[BackgroundEntry],
    mode: RunMode,
    toggles: Iterable[Toggle],
) -> PromptDocument:
    """
    Build the prompt for ``q``. Sections whose toggle is off are left empty
    but the toggle set is recorded, so ``render`` can reproduce the
    disabled-component variants exactly.
    """
    active = frozenset(toggles)
    if mode == RunMode.BASELINE:
        active = frozenset()
    document = PromptDocument(
        query_text=q.text,
        config_mode=mode,
        toggles=active,
        task_definition=t.role_preamble if t is not None and Toggle.TD in active else "",
        knowledge_background=tuple(background) if Toggle.KB in active else (),
        reasoning_guidance=(
            t.reasoning_path.steps if t is not None and Toggle.RG in active else ()
        ),
        template_id=t.id if t is not None else None,
    )
    logger.debug(
        f"Assembled {mode.value} prompt: toggles={sorted(x.value for x in active)}, "
        f"background={len(document.knowledge_background)}"
    )
    return document
