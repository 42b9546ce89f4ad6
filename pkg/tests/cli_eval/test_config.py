import tempfile
import unittest
from datetime import date
from pathlib import Path

from lexgraph.cli_eval import LexGraphSettings, load_settings, settings_from_dict
from lexgraph.errors import ConfigError
from tests.fixtures import DATA_DIR, SAMPLE_CONFIG


class TestLoadSettings(unittest.TestCase):
    def test_sample(self):
        settings = load_settings(SAMPLE_CONFIG)
        self.assertEqual(settings.paths.graph, DATA_DIR / "sample.kg.jsonl")
        self.assertEqual(settings.retrieval.k, 8)
        self.assertEqual(settings.relevance.background_size, 6)
        self.assertEqual(settings.quality.threshold, 0.5)
        self.assertEqual(settings.search.as_of, date(2024, 1, 1))
        self.assertEqual(settings.query.jurisdictions, ["FR"])
        self.assertEqual(settings.provider.kind, "mock")

    def test_defaults(self):
        settings = LexGraphSettings()
        self.assertEqual(settings.retrieval.fusion_weights.as_tuple(), (0.3, 0.2, 0.25, 0.25))
        self.assertEqual(settings.quality.max_iterations, 3)
        self.assertFalse(settings.search.enabled)

    def test_errors_name_the_key(self):
        cases = {
            "quality.threshold": {"quality": {"threshold": 1.5}},
            "retrieval.lambda_decay": {"retrieval": {"lambda_decay": 1.0}},
            "provider.kind": {"provider": {"kind": "carrier-pigeon"}},
            "paths.graphs": {"paths": {"graphs": "x"}},
        }
        for key, data in cases.items():
            with self.subTest(key):
                with self.assertRaises(ConfigError) as ctx:
                    settings_from_dict(data)
                self.assertIn(key, str(ctx.exception))

    def test_unnormalized_weights_rejected(self):
        with self.assertRaises(ConfigError):
            settings_from_dict({"relevance": {"weights": {"w_text": 0.9}}})

    def test_file_errors(self):
        with self.assertRaises(ConfigError):
            load_settings("/nonexistent/lexgraph.toml")
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "broken.toml"
            path.write_text("[retrieval\nk = 3\n", encoding="utf-8")
            with self.assertRaises(ConfigError) as ctx:
                load_settings(path)
            self.assertIn("broken.toml", str(ctx.exception))


if __name__ == "__main__":
    unittest.main()
