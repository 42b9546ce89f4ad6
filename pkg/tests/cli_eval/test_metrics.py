import random
import tempfile
import unittest
from pathlib import Path

from lexgraph.cli_eval import (
    ConfusionCounts,
    bleu_n,
    confusion_metrics,
    evaluate_pairs,
    lcs_length,
    rouge_l,
    rouge_n,
)
from lexgraph.cli_eval.metrics import read_labels
from lexgraph.errors import ParameterError


class TestConfusionMetrics(unittest.TestCase):
    def test_examples(self):
        self.assertAlmostEqual(confusion_metrics(ConfusionCounts(tp=7, fn=3))[0], 0.7)
        self.assertAlmostEqual(confusion_metrics(ConfusionCounts(tn=8, fp=2))[1], 0.8)
        self.assertAlmostEqual(confusion_metrics(ConfusionCounts(tp=7, fp=7))[2], 0.5)

    def test_zero_denominators_are_undefined(self):
        self.assertEqual(confusion_metrics(ConfusionCounts()), (None, None, None))

    def test_matches_brute_force_counts(self):
        rng = random.Random(23)
        for trial in range(1000):
            n = rng.randint(0, 30)
            gold = [rng.random() < 0.5 for _ in range(n)]
            pred = [rng.random() < 0.5 for _ in range(n)]
            tp = fp = tn = fn = 0
            for g, p in zip(gold, pred):
                if g and p:
                    tp += 1
                elif p:
                    fp += 1
                elif g:
                    fn += 1
                else:
                    tn += 1
            expected = (
                tp / (tp + fn) if tp + fn else None,
                tn / (tn + fp) if tn + fp else None,
                tp / (tp + fp) if tp + fp else None,
            )
            with self.subTest(trial=trial):
                self.assertEqual(confusion_metrics(ConfusionCounts.from_labels(gold, pred)), expected)

    def test_label_length_mismatch(self):
        with self.assertRaises(ParameterError):
            ConfusionCounts.from_labels([True], [])


class TestOverlapMetrics(unittest.TestCase):
    def test_bleu(self):
        self.assertAlmostEqual(bleu_n(["a", "b"], ["a", "c"], 1), 0.5, delta=1e-9)
        self.assertAlmostEqual(bleu_n(["a", "b", "c"], ["a", "b", "c"], 2), 1.0)
        self.assertEqual(bleu_n(["x", "y"], ["a", "b"], 1), 0.0)
        self.assertEqual(bleu_n([], ["a"], 1), 0.0)

    def test_bleu_brevity_penalty(self):
        self.assertAlmostEqual(bleu_n(["a"], ["a", "b"], 1), 0.36787944117, places=9)

    def test_rouge(self):
        self.assertAlmostEqual(rouge_l(["a", "b", "c"], ["a", "c"]), 0.8, delta=1e-9)
        self.assertEqual(lcs_length(["a", "b", "c"], ["a", "c"]), 2)
        self.assertAlmostEqual(rouge_l(["a", "b"], ["a", "b"]), 1.0)
        self.assertEqual(rouge_l(["a"], ["b"]), 0.0)
        self.assertAlmostEqual(rouge_n(["a", "b", "c"], ["a", "b", "d"], 2), 0.5)

    def test_evaluate_pairs(self):
        report = evaluate_pairs(["fault liability applies"], ["fault liability applies"], [(True, True)])
        data = report.as_dict()
        self.assertEqual(data["pairs"], 1)
        self.assertAlmostEqual(data["bleu_1"], 1.0)
        self.assertEqual(data["bleu_l"], data["rouge_l"])
        self.assertEqual(data["specificity"], "n/a")
        self.assertEqual(data["sensitivity"], 1.0)
        self.assertNotIn("sensitivity", evaluate_pairs(["a"], ["a"]).as_dict())
        with self.assertRaises(ParameterError):
            evaluate_pairs(["a"], [])


class TestReadLabels(unittest.TestCase):
    def test_parse_and_errors(self):
        with tempfile.TemporaryDirectory() as tmp:
            good = Path(tmp) / "labels.txt"
            good.write_text("# gold pred\n1 0\n\ntrue yes\n", encoding="utf-8")
            self.assertEqual(read_labels(good), [(True, False), (True, True)])
            bad = Path(tmp) / "bad.txt"
            bad.write_text("1 0\nmaybe 1\n", encoding="utf-8")
            with self.assertRaises(ParameterError) as ctx:
                read_labels(bad)
            self.assertIn("bad.txt:2", str(ctx.exception))


if __name__ == "__main__":
    unittest.main()
