"""
Rule-table prompt adjustment.
"""

from typing import Callable, Optional, Sequence

from loguru import logger

from ..prompt_engine import BackgroundEntry, PromptDocument, Toggle
from .models import OptimizationConfig, QualityReport

BackgroundExpander = Callable[[int], Sequence[BackgroundEntry]]

CITATION_BLOCK = (
    "Citation format: cite every legal provision you rely on as [CODE], "
    "using the codes exactly as they appear in the knowledge background, "
    "for example [CC-1382]. Do not invent codes."
)
STEP_BLOCK_HEADER = (
    "Answer in numbered steps, one paragraph per step, each building on the previous one:"
)
DEFAULT_STEPS = ("Issue identification", "Rule statement", "Application", "Conclusion")
GROUNDING_BLOCK = (
    "Grounding: support every legal statement with the knowledge background "
    "and cite only the codes listed there."
)
TERMINOLOGY_BLOCK = (
    "Terminology: use the precise legal terms of the knowledge background "
    "instead of everyday paraphrases."
)


def _step_block(prompt: PromptDocument) -> str:
    steps = prompt.reasoning_guidance or DEFAULT_STEPS
    return "\n".join([STEP_BLOCK_HEADER] + [f"{i}. {s}" for i, s in enumerate(steps, start=1)])


def _expand_background(
    prompt: PromptDocument, cfg: OptimizationConfig, expander: Optional[BackgroundExpander]
) -> Optional[PromptDocument]:
    if expander is None or Toggle.KB not in prompt.toggles:
        return None
    current = len(prompt.knowledge_background)
    expanded = tuple(expander(current + cfg.background_step))
    if len(expanded) <= current:
        return None
    logger.info(f"Expanded knowledge background from {current} to {len(expanded)} entries")
    return prompt.evolve(knowledge_background=expanded)


def _with_instruction(prompt: PromptDocument, block: str) -> PromptDocument:
    if block in prompt.instructions:
        return prompt
    return prompt.evolve(instructions=prompt.instructions + (block,))


def apply_rule(
    rule: str,
    prompt: PromptDocument,
    cfg: OptimizationConfig,
    expander: Optional[BackgroundExpander] = None,
) -> Optional[PromptDocument]:
    """The edited prompt, or None when ``rule`` cannot change ``prompt``."""
    if rule == "low_comprehensiveness":
        return _expand_background(prompt, cfg, expander)
    # instruction blocks render under the reasoning guidance section
    if Toggle.RG not in prompt.toggles:
        return None
    block = {
        "low_citation": CITATION_BLOCK,
        "low_accuracy": GROUNDING_BLOCK,
        "low_expression": TERMINOLOGY_BLOCK,
    }.get(rule)
    if rule == "low_logic":
        block = _step_block(prompt)
    if block is None or block in prompt.instructions:
        return None
    return _with_instruction(prompt, block)


def adjust_prompt(
    prompt: PromptDocument,
    report: QualityReport,
    cfg: OptimizationConfig,
    expander: Optional[BackgroundExpander] = None,
) -> PromptDocument:
    """
    Apply, in table order, every rule whose deficiency the report names and
    that has not been applied to this prompt before.

    When no rule applies the input is returned unchanged (the same object)
    and a warning is logged.
    """
    adjusted = prompt
    for rule in cfg.adjustment_rules:
        if not report.has(rule) or rule in adjusted.applied_adjustments:
            continue
        edited = apply_rule(rule, adjusted, cfg, expander)
        if edited is None:
            logger.debug(f"Adjustment rule {rule} is not applicable")
            continue
        adjusted = edited.evolve(applied_adjustments=adjusted.applied_adjustments + (rule,))
    if adjusted is prompt:
        logger.warning(
            "No applicable adjustment rule for deficiencies "
            f"{sorted({d.kind for d in report.diagnostics})}"
        )
    else:
        logger.info(f"Applied adjustments {list(adjusted.applied_adjustments)}")
    return adjusted
