"""
Closed-loop prompt optimization: generate, assess, then either stop or
adjust the prompt and regenerate.
"""

from dataclasses import dataclass
from typing import Callable, Optional

from langchain_core.language_models.chat_models import BaseChatModel
from langgraph.graph import END, START, StateGraph
from loguru import logger
from typing_extensions import TypedDict

from ..errors import ProviderError
from ..prompt_engine import PromptDocument
from .adjustment import BackgroundExpander, adjust_prompt
from .models import IterationRecord, OptimizationConfig, QualityReport

Assessor = Callable[[str, PromptDocument], QualityReport]


class LoopState(TypedDict):
    prompt: PromptDocument
    response: str
    report: Optional[QualityReport]
    calls: int


@dataclass(frozen=True)
class OptimizationResult:
    response: str
    report: QualityReport
    prompt: PromptDocument
    trace: tuple[IterationRecord, ...]
    provider_calls: int
    best_iteration: int


class OptimizationSession:
    """
    One optimization run. The session owns its trace, so a provider failure
    can be reported together with the iterations completed so far.
    """

    def __init__(
        self,
        provider: BaseChatModel,
        assessor: Assessor,
        cfg: OptimizationConfig,
        expander: Optional[BackgroundExpander] = None,
        dynamic: bool = True,
    ) -> None:
        self.provider = provider
        self.assessor = assessor
        self.cfg = cfg
        self.expander = expander
        self.dynamic = dynamic
        self.trace: list[IterationRecord] = []
        self.prompts: list[PromptDocument] = []
        self.graph = self._build()

    def _build(self):
        builder = StateGraph(LoopState)
        builder.add_node("generate", self.generate)
        builder.add_node("assess", self.assess)
        builder.add_node("adjust", self.adjust)
        builder.add_edge(START, "generate")
        builder.add_edge("generate", "assess")
        builder.add_conditional_edges("assess", self.route, {"adjust": "adjust", END: END})
        builder.add_edge("adjust", "generate")
        return builder.compile()

    def generate(self, state: LoopState) -> dict:
        text = state["prompt"].render()
        logger.bind(trace=True).debug(f"Prompt (call {state['calls'] + 1}):\n{text}")
        try:
            message = self.provider.invoke(text)
        except ProviderError as e:
            logger.error(f"Provider failed after {len(self.trace)} iterations: {e}")
            raise ProviderError(str(e), trace=self.trace) from e
        except Exception as e:
            logger.error(f"Provider failed after {len(self.trace)} iterations: {e}")
            raise ProviderError(f"provider failure: {e}", trace=self.trace) from e
        response = str(message.content)
        logger.bind(trace=True).debug(f"Response (call {state['calls'] + 1}):\n{response}")
        return {"response": response, "calls": state["calls"] + 1}

    def assess(self, state: LoopState) -> dict:
        report = self.assessor(state["response"], state["prompt"])
        self.prompts.append(state["prompt"])
        self.trace.append(
            IterationRecord(
                iteration=state["calls"],
                prompt=state["prompt"].render(),
                response=state["response"],
                report=report,
                applied_adjustments=state["prompt"].applied_adjustments,
            )
        )
        logger.info(
            f"Iteration {state['calls']}: total={report.total:.4f} "
            f"verdict={'pass' if report.verdict else 'fail'}"
        )
        return {"report": report}

    def route(self, state: LoopState) -> str:
        report = state["report"]
        if report is not None and report.verdict:
            return END
        if not self.dynamic or state["calls"] >= self.cfg.max_iterations:
            return END
        return "adjust"

    def adjust(self, state: LoopState) -> dict:
        assert state["report"] is not None
        adjusted = adjust_prompt(state["prompt"], state["report"], self.cfg, self.expander)
        return {"prompt": adjusted}

    def run(self, prompt: PromptDocument) -> OptimizationResult:
        limit = 3 * self.cfg.max_iterations + 5
        self.graph.invoke(
            {"prompt": prompt, "response": "", "report": None, "calls": 0},
            config={"recursion_limit": limit},
        )
        last = self.trace[-1]
        if last.report.verdict:
            best = len(self.trace) - 1
        else:
            best = max(range(len(self.trace)), key=lambda i: (self.trace[i].report.total, -i))
            logger.info(
                f"Quality threshold not reached in {len(self.trace)} calls; "
                f"returning iteration {best + 1} (total={self.trace[best].report.total:.4f})"
            )
        chosen = self.trace[best]
        return OptimizationResult(
            response=chosen.response,
            report=chosen.report,
            prompt=self.prompts[best],
            trace=tuple(self.trace),
            provider_calls=len(self.trace),
            best_iteration=best + 1,
        )


def optimize(
    prompt: PromptDocument,
    provider: BaseChatModel,
    assessor: Assessor,
    cfg: OptimizationConfig,
    expander: Optional[BackgroundExpander] = None,
    dynamic: bool = True,
) -> OptimizationResult:
    """
    Run the generate/assess/adjust loop for ``prompt``.

    At most ``cfg.max_iterations`` provider calls are made (exactly one when
    ``dynamic`` is off). On exhaustion the best-scoring iteration is
    returned, the earliest one on ties.

    Raises:
        ProviderError: when the provider fails; ``trace`` holds the finished iterations.
    """
    return OptimizationSession(provider, assessor, cfg, expander, dynamic).run(prompt)
