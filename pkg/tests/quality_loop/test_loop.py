import random
import unittest

from lexgraph.errors import ProviderError
from lexgraph.prompt_engine import PromptDocument, RunMode
from lexgraph.quality_loop import OptimizationConfig, QualityReport, ScriptedChatModel, optimize


def score_assessor(response, prompt):
    """Reads the score straight from the scripted response."""
    total = float(response)
    return QualityReport(
        accuracy=total,
        comprehensiveness=total,
        citation=total,
        logic=total,
        expression=total,
        total=total,
        threshold=0.7,
    )


class FailingChatModel(ScriptedChatModel):
    fail_on_call: int = 2

    def _generate(self, messages, stop=None, run_manager=None, **kwargs):
        if self.call_count + 1 >= self.fail_on_call:
            raise ConnectionError("endpoint unreachable")
        return super()._generate(messages, stop, run_manager, **kwargs)


class TestOptimize(unittest.TestCase):
    def setUp(self):
        self.prompt = PromptDocument(query_text="Who is liable?", config_mode=RunMode.BASELINE, toggles=frozenset())
        self.cfg = OptimizationConfig(max_iterations=3)

    def run_script(self, responses, **kwargs):
        provider = ScriptedChatModel(responses=responses)
        result = optimize(self.prompt, provider, score_assessor, self.cfg, **kwargs)
        return provider, result

    def test_passes_first_time(self):
        provider, result = self.run_script(["0.9"])
        self.assertEqual(provider.call_count, 1)
        self.assertEqual(len(result.trace), 1)
        self.assertTrue(result.report.verdict)

    def test_never_passes(self):
        provider, result = self.run_script(["0.3", "0.6", "0.5"])
        self.assertEqual(provider.call_count, 3)
        self.assertEqual(result.provider_calls, 3)
        self.assertFalse(result.report.verdict)
        self.assertEqual(result.response, "0.6")
        self.assertEqual(result.best_iteration, 2)
        for record in result.trace:
            self.assertGreaterEqual(result.report.total, record.report.total)

    def test_passes_on_second_call(self):
        provider, result = self.run_script(["0.2", "0.8", "0.1"])
        self.assertEqual(provider.call_count, 2)
        self.assertTrue(result.report.verdict)
        self.assertEqual([r.iteration for r in result.trace], [1, 2])

    def test_ties_go_to_earliest_iteration(self):
        _, result = self.run_script(["0.4"])
        self.assertEqual(result.best_iteration, 1)
        self.assertEqual(len(result.trace), 3)

    def test_static_mode_makes_one_call(self):
        provider, result = self.run_script(["0.1", "0.9"], dynamic=False)
        self.assertEqual(provider.call_count, 1)
        self.assertEqual(result.response, "0.1")

    def test_call_budget_respected(self):
        rng = random.Random(17)
        for trial in range(100):
            cfg = OptimizationConfig(max_iterations=rng.randint(1, 5))
            script = [f"{rng.random():.3f}" for _ in range(rng.randint(1, 6))]
            provider = ScriptedChatModel(responses=script)
            with self.subTest(trial=trial, script=script):
                result = optimize(self.prompt, provider, score_assessor, cfg)
                self.assertLessEqual(provider.call_count, cfg.max_iterations)
                self.assertEqual(provider.call_count, len(result.trace))
                if not result.report.verdict:
                    self.assertEqual(provider.call_count, cfg.max_iterations)

    def test_provider_failure_keeps_partial_trace(self):
        provider = FailingChatModel(responses=["0.1"], fail_on_call=2)
        with self.assertRaises(ProviderError) as ctx:
            optimize(self.prompt, provider, score_assessor, self.cfg)
        self.assertEqual(len(ctx.exception.trace), 1)
        self.assertEqual(ctx.exception.trace[0].response, "0.1")


if __name__ == "__main__":
    unittest.main()
