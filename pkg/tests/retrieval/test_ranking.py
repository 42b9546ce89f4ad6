import random
import unittest

from lexgraph.errors import ParameterError
from lexgraph.kg_core import KnowledgeGraph
from lexgraph.retrieval import (
    GraphCentroidEmbeddings,
    MatchParams,
    TermStats,
    build_query,
    concept_similarity,
    load_term_stats,
    mmr_select,
    retrieve,
    score_concept,
)
from lexgraph.retrieval.terms import EmbeddingTermSimilarity
from tests.fixtures import SAMPLE_TERMS, concept, sample_graph


class TestMmrSelect(unittest.TestCase):
    def setUp(self):
        self.g = KnowledgeGraph(
            [
                concept("a", embedding=(1.0, 0.0)),
                concept("b", embedding=(1.0, 0.0)),
                concept("c", embedding=(0.0, 1.0)),
            ]
        )
        self.candidates = [("a", 0.9), ("b", 0.85), ("c", 0.5)]

    def test_duplicates_give_way_to_distinct_concept(self):
        picks = mmr_select(self.candidates, concept_similarity(self.g), 2, 0.5)
        self.assertEqual(picks, ["a", "c"])

    def test_lambda_one_is_plain_ranking(self):
        picks = mmr_select(self.candidates, concept_similarity(self.g), 2, 1.0)
        self.assertEqual(picks, ["a", "b"])

    def test_ties_go_to_smaller_id(self):
        picks = mmr_select([("b", 0.5), ("a", 0.5)], concept_similarity(self.g), 1, 0.5)
        self.assertEqual(picks, ["a"])

    def test_relevance_is_relative_to_best_score(self):
        sims = {frozenset({"A", "B"}): 0.5}
        similarity = lambda x, y: sims.get(frozenset({x, y}), 0.0)  # noqa: E731
        candidates = [("A", 0.2), ("B", 0.19), ("C", 0.05)]
        # B: 0.5 * 0.95 - 0.5 * 0.5 = 0.225 beats C: 0.5 * 0.25 - 0 = 0.125
        self.assertEqual(mmr_select(candidates, similarity, 2, 0.5), ["A", "B"])
        scaled = [(cid, s * 5) for cid, s in candidates]
        self.assertEqual(mmr_select(scaled, similarity, 2, 0.5), ["A", "B"])

    def test_invalid_k(self):
        with self.assertRaises(ParameterError):
            mmr_select(self.candidates, concept_similarity(self.g), 0, 0.5)

    def test_positive_rescaling_keeps_selection(self):
        rng = random.Random(4)
        ids = [f"n{i}" for i in range(8)]
        g = KnowledgeGraph(
            [concept(cid, embedding=(rng.random(), rng.random(), rng.random())) for cid in ids]
        )
        similarity = concept_similarity(g)
        for trial in range(100):
            scores = [(cid, rng.random()) for cid in ids]
            lam = rng.choice([0.3, 0.5, 0.7, 0.9])
            k = rng.randint(1, 8)
            expected = mmr_select(scores, similarity, k, lam)
            for factor in (0.5, 2.0, 8.0):
                with self.subTest(trial=trial, factor=factor):
                    scaled = [(cid, s * factor) for cid, s in scores]
                    self.assertEqual(mmr_select(scaled, similarity, k, lam), expected)


class TestRetrieve(unittest.TestCase):
    def setUp(self):
        self.g = sample_graph()
        self.stats = load_term_stats(SAMPLE_TERMS)
        self.embeddings = GraphCentroidEmbeddings(self.g)

    def test_query_identifies_cited_code(self):
        q = build_query(
            "Is art. 1240 CC the basis for fault-based liability?", self.g, self.embeddings
        )
        self.assertEqual(q.code, "CC-1240")
        self.assertIn("cc_1240", q.concept_ids)
        self.assertIsNotNone(q.embedding)

    def test_centroid_embedding_empty_without_terms(self):
        self.assertEqual(self.embeddings.embed_query("zzz qqq"), [])

    def test_lambda_one_matches_full_sort(self):
        p = MatchParams(diversity_lambda=1.0)
        q = build_query("negligence damage compensation", self.g, self.embeddings)
        sem = EmbeddingTermSimilarity(self.embeddings)
        results = retrieve(self.g, q, self.stats, p, 5, sem)
        scored = sorted(
            ((cid, score_concept(self.g, cid, q, self.stats, p, sem).fused) for cid in self.g.concepts),
            key=lambda item: (-item[1], item[0]),
        )
        self.assertEqual([r.concept for r in results], [cid for cid, _ in scored[:5]])
        self.assertEqual([r.rank for r in results], [1, 2, 3, 4, 5])

    def test_scores_in_unit_interval(self):
        q = build_query("art. 1241 CC negligence of a driver", self.g, self.embeddings)
        for r in retrieve(self.g, q, self.stats, MatchParams(), 12):
            with self.subTest(concept=r.concept):
                for value in r.scores.as_dict().values():
                    self.assertGreaterEqual(value, 0.0)
                    self.assertLessEqual(value, 1.0)

    def test_k_larger_than_graph(self):
        g = KnowledgeGraph([concept("a"), concept("b"), concept("c")])
        results = retrieve(g, build_query("legal text", g), TermStats(), MatchParams(), 10)
        self.assertEqual([r.rank for r in results], [1, 2, 3])

    def test_exclude_superseded(self):
        q = build_query("art. 1382 CC", self.g)
        kept = retrieve(self.g, q, self.stats, MatchParams(), 12, exclude_superseded=True)
        self.assertNotIn("cc_1382", [r.concept for r in kept])
        self.assertEqual(len(kept), 11)

    def test_errors(self):
        with self.assertRaises(ParameterError):
            retrieve(KnowledgeGraph([]), build_query("x", KnowledgeGraph([])), TermStats(), MatchParams(), 1)
        with self.assertRaises(ParameterError):
            retrieve(self.g, build_query("x", self.g), self.stats, MatchParams(), 0)


if __name__ == "__main__":
    unittest.main()
