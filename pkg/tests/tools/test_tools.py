import unittest
from dataclasses import replace

from lexgraph.cli_eval import load_runtime, load_settings
from lexgraph.tools import build_tools
from tests.fixtures import SAMPLE_CONFIG


class TestLegalTools(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.runtime = load_runtime(load_settings(SAMPLE_CONFIG))
        cls.tools = {t.name: t for t in build_tools(cls.runtime)}

    def test_tool_names(self):
        self.assertEqual(
            sorted(self.tools), ["get_legal_concept", "search_legal_concepts", "search_legal_sources"]
        )
        self.assertIn("query", self.tools["search_legal_concepts"].args)

    def test_get_concept_by_id_and_code(self):
        by_id = self.tools["get_legal_concept"].invoke({"identifier": "cc_1240"})
        by_code = self.tools["get_legal_concept"].invoke({"identifier": "art. 1240, CC"})
        self.assertEqual(by_id, by_code)
        self.assertEqual(by_id["code"], "CC-1240")
        self.assertIn("FR", by_id["jurisdictions"])
        self.assertTrue(by_id["related"])

    def test_get_superseded_concept(self):
        old = self.tools["get_legal_concept"].invoke({"identifier": "CC-1382"})
        self.assertEqual(old["superseded_by"], "cc_1240")

    def test_unknown_concept(self):
        result = self.tools["get_legal_concept"].invoke({"identifier": "CC-9999"})
        self.assertIn("error", result)

    def test_search_concepts(self):
        results = self.tools["search_legal_concepts"].invoke(
            {"query": "liability for damage caused by negligence under art. 1241 CC", "max_results": 3}
        )
        self.assertLessEqual(len(results), 3)
        self.assertEqual(results[0]["id"], "cc_1241")
        self.assertNotIn("cc_1382", [r["id"] for r in results])

    def test_search_sources_keeps_current_sources(self):
        results = self.tools["search_legal_sources"].invoke({"query": "liability"})
        self.assertEqual([r["code"] for r in results], ["CC-1240", "LOI-1985-677", "CC-1241"])
        self.assertTrue(all(r["jurisdiction"] == "FR" for r in results))
        german = self.tools["search_legal_sources"].invoke(
            {"query": "liability", "jurisdiction": "DE"}
        )
        self.assertEqual([r["code"] for r in german], ["BGB-823"])

    def test_search_sources_without_client(self):
        tools = {t.name: t for t in build_tools(replace(self.runtime, search_client=None))}
        self.assertIn("error", tools["search_legal_sources"].invoke({"query": "liability"})[0])


if __name__ == "__main__":
    unittest.main()
