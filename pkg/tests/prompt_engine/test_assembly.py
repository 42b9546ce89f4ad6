import unittest

from lexgraph.prompt_engine import (
    EMPTY_BACKGROUND,
    KNOWLEDGE_BACKGROUND,
    REASONING_GUIDANCE,
    TASK_DEFINITION,
    RunMode,
    Toggle,
    assemble_prompt,
    citation_code,
    graph_background,
    graph_entry,
    load_templates,
    render_snippet,
    resolve_toggles,
)
from lexgraph.relevance import RelevanceParams, rank_background
from lexgraph.retrieval import Query
from tests.fixtures import SAMPLE_TEMPLATES, concept, sample_graph

QUERY = "Is the driver liable for the damage caused by his fault?"


class TestAssemblePrompt(unittest.TestCase):
    def setUp(self):
        self.g = sample_graph()
        self.template = load_templates(SAMPLE_TEMPLATES).template("tort_liability")
        self.q = Query.from_text(QUERY)
        self.ranked = rank_background(
            self.g, self.q, ["cc_1240", "cc_1241", "case_2003_traffic"], RelevanceParams(), 3
        )
        self.background = graph_background(self.g, self.ranked)

    def _assemble(self, mode, disabled=()):
        return assemble_prompt(
            self.q, self.template, self.background, mode, resolve_toggles(mode, disabled)
        )

    def test_complete_mode(self):
        document = self._assemble(RunMode.COMPLETE)
        self.assertEqual(len(document.sections()), 3)
        self.assertEqual(
            [e.concept_id for e in document.knowledge_background],
            [cid for cid, _ in self.ranked],
        )
        text = document.render()
        self.assertTrue(text.startswith(TASK_DEFINITION))
        self.assertTrue(text.endswith(QUERY))
        self.assertIn("Step 1: Issue identification", text)
        positions = [text.index(f"[{e.code}]") for e in document.knowledge_background]
        self.assertEqual(positions, sorted(positions))
        self.assertEqual(document.template_id, "tort_liability")

    def test_baseline_renders_the_raw_query(self):
        document = self._assemble(RunMode.BASELINE)
        self.assertEqual(document.render(), QUERY)
        forced = assemble_prompt(self.q, self.template, self.background, RunMode.BASELINE, list(Toggle))
        self.assertEqual(forced.render(), QUERY)

    def test_disabling_prompt_sections_matches_baseline(self):
        stripped = self._assemble(RunMode.COMPLETE, [Toggle.TD, Toggle.KB, Toggle.RG])
        self.assertEqual(stripped.render(), self._assemble(RunMode.BASELINE).render())

    def test_without_knowledge_background(self):
        document = self._assemble(RunMode.COMPLETE, [Toggle.KB])
        self.assertEqual(document.knowledge_background, ())
        text = document.render()
        self.assertNotIn(KNOWLEDGE_BACKGROUND, text)
        self.assertIn(TASK_DEFINITION, text)
        self.assertIn(REASONING_GUIDANCE, text)
        self.assertEqual(document.disabled, frozenset({Toggle.KB}))

    def test_traditional_mode_shows_only_background(self):
        document = self._assemble(RunMode.TRADITIONAL)
        self.assertEqual(len(document.sections()), 1)
        self.assertTrue(document.render().startswith(KNOWLEDGE_BACKGROUND))

    def test_empty_background_placeholder(self):
        document = assemble_prompt(self.q, self.template, [], RunMode.COMPLETE, resolve_toggles(RunMode.COMPLETE))
        self.assertIn(EMPTY_BACKGROUND, document.render())

    def test_deterministic(self):
        first = self._assemble(RunMode.COMPLETE).render()
        self.assertEqual(first, self._assemble(RunMode.COMPLETE).render())


class TestSnippets(unittest.TestCase):
    def test_snippet_carries_code(self):
        g = sample_graph()
        entry = graph_entry(g, "cc_1240")
        self.assertEqual(entry.code, "CC-1240")
        self.assertTrue(entry.snippet.startswith("[CC-1240] Fault-based liability: Any act"))

    def test_long_text_truncated(self):
        snippet = render_snippet("CC-1", "Title", "word " * 200)
        self.assertTrue(snippet.endswith("..."))
        self.assertLessEqual(len(snippet), len("[CC-1] Title: ") + 400)

    def test_code_falls_back_to_normalized_id(self):
        self.assertEqual(citation_code(concept("case_x")), "CASE-X")
        self.assertEqual(citation_code(concept("x", code="CC-1")), "CC-1")


if __name__ == "__main__":
    unittest.main()
