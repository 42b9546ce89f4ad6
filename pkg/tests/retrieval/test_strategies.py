import math
import random
import unittest

from lexgraph.errors import ParameterError
from lexgraph.kg_core import KnowledgeGraph, Relation
from lexgraph.retrieval import (
    FusionWeights,
    MatchParams,
    Query,
    cosine,
    fuse_scores,
    path_inference,
    vector_similarity,
)
from tests.fixtures import best_shortest_path, concept, random_graph


class TestVectorSimilarity(unittest.TestCase):
    def test_examples(self):
        self.assertAlmostEqual(vector_similarity((1, 0), (1, 0)), 1.0)
        self.assertAlmostEqual(vector_similarity((1, 0), (0, 1)), 0.0)
        self.assertAlmostEqual(vector_similarity((1, 1), (1, 0)), 0.70710678)
        self.assertEqual(vector_similarity((1, 0), (-1, 0)), 0.0)

    def test_errors(self):
        with self.assertRaises(ParameterError):
            cosine((1, 0), (1, 0, 0))
        with self.assertRaises(ParameterError):
            cosine((0, 0), (1, 0))

    def test_symmetric_and_scale_invariant(self):
        rng = random.Random(5)
        for _ in range(200):
            a = [rng.uniform(-1, 1) for _ in range(4)]
            b = [rng.uniform(-1, 1) for _ in range(4)]
            scale = rng.uniform(0.1, 50)
            self.assertAlmostEqual(vector_similarity(a, b), vector_similarity(b, a), delta=1e-9)
            self.assertAlmostEqual(
                vector_similarity(a, b), vector_similarity([x * scale for x in a], b), delta=1e-9
            )


class TestPathInference(unittest.TestCase):
    def setUp(self):
        self.g = KnowledgeGraph(
            [concept("A"), concept("B"), concept("C"), concept("D")],
            [Relation("A", "B", "r", 0.5), Relation("B", "C", "r", 0.4)],
        )
        self.p = MatchParams(lambda_decay=0.8)

    def test_examples(self):
        q = Query.from_text("q", concept_ids=frozenset({"C"}))
        self.assertAlmostEqual(path_inference(self.g, "A", q, self.p), 0.576)
        self.assertEqual(path_inference(self.g, "C", q, self.p), 1.0)
        self.assertEqual(path_inference(self.g, "D", q, self.p), 0.0)
        self.assertEqual(path_inference(self.g, "A", Query.from_text("q"), self.p), 0.0)

    def test_matches_exhaustive_search(self):
        rng = random.Random(9)
        for trial in range(200):
            p = MatchParams(lambda_decay=rng.uniform(0.01, 0.99))
            g = random_graph(rng, max_nodes=8)
            ids = sorted(g.concepts)
            targets = frozenset(rng.sample(ids, rng.randint(1, min(3, len(ids)))))
            c = rng.choice(ids)
            q = Query.from_text("q", concept_ids=targets)
            expected = 1.0 if c in targets else 0.0
            if c not in targets:
                for t in targets:
                    found = best_shortest_path(g, c, t)
                    if found is not None:
                        hops = len(found[1]) - 1
                        expected = max(expected, p.lambda_decay**hops * found[0])
                expected = min(1.0, expected)
            with self.subTest(trial=trial, lambda_decay=p.lambda_decay):
                self.assertAlmostEqual(path_inference(g, c, q, p), expected)


class TestFuseScores(unittest.TestCase):
    def _params(self, *weights):
        return MatchParams().with_fusion(FusionWeights(cm=weights[0], vs=weights[1], pi=weights[2], tm=weights[3]))

    def test_examples(self):
        self.assertAlmostEqual(fuse_scores(1, 1, 1, 1, self._params(0.4, 0.3, 0.2, 0.1)).fused, 1.0)
        self.assertAlmostEqual(fuse_scores(1, 0, 0, 0, self._params(0.25, 0.25, 0.25, 0.25)).fused, 0.25)
        self.assertAlmostEqual(
            fuse_scores(0.5, 0.5, 0.5, 0.5, self._params(0.4, 0.3, 0.2, 0.1)).fused, 0.5
        )

    def test_rejects_out_of_range_scores(self):
        with self.assertRaises(ParameterError):
            fuse_scores(1.2, 0, 0, 0, MatchParams())

    def test_fusion_weights_must_sum_to_one(self):
        with self.assertRaises(ValueError):
            FusionWeights(cm=0.5, vs=0.5, pi=0.5, tm=0.5)

    def test_convex_and_monotone(self):
        rng = random.Random(1)
        for trial in range(1000):
            raw = [rng.random() for _ in range(4)]
            total = math.fsum(raw)
            weights = [w / total for w in raw]
            weights[3] = 1.0 - math.fsum(weights[:3])
            p = self._params(*weights)
            scores = [rng.random() for _ in range(4)]
            with self.subTest(trial=trial):
                fused = fuse_scores(*scores, p).fused
                self.assertGreaterEqual(fused, min(scores))
                self.assertLessEqual(fused, max(scores))
                i = rng.randrange(4)
                raised = list(scores)
                raised[i] = min(1.0, raised[i] + rng.random() * 0.5)
                self.assertGreaterEqual(fuse_scores(*raised, p).fused, fused - 1e-12)


class TestDisabledStrategies(unittest.TestCase):
    def test_renormalizes_remaining_weights(self):
        weights = FusionWeights().without(["cm"])
        self.assertEqual(weights.cm, 0.0)
        self.assertAlmostEqual(weights.vs, 0.2 / 0.7)
        self.assertAlmostEqual(weights.pi, 0.25 / 0.7)
        self.assertAlmostEqual(weights.tm, 0.25 / 0.7)
        self.assertAlmostEqual(math.fsum(weights.as_tuple()), 1.0)

    def test_ratios_preserved(self):
        weights = FusionWeights().without(["cm", "vs"])
        self.assertAlmostEqual(weights.pi, 0.5)
        self.assertAlmostEqual(weights.tm, 0.5)

    def test_errors(self):
        with self.assertRaises(ParameterError):
            FusionWeights().without(["cm", "vs", "pi", "tm"])
        with self.assertRaises(ParameterError):
            FusionWeights().without(["xx"])


if __name__ == "__main__":
    unittest.main()
