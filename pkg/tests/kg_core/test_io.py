import io
import json
import random
import unittest

from lexgraph.errors import GraphLoadError
from lexgraph.kg_core import load_graph, save_graph
from tests.fixtures import SAMPLE_GRAPH, random_graph


def _stream(*records) -> io.BytesIO:
    lines = [r if isinstance(r, str) else json.dumps(r) for r in records]
    return io.BytesIO(("\n".join(lines) + "\n").encode("utf-8"))


def _concept(cid, **extra):
    return {"kind": "concept", "id": cid, "layer": "Representation", "text": "damage fault", **extra}


class TestLoadGraph(unittest.TestCase):
    def test_sample(self):
        with open(SAMPLE_GRAPH, "rb") as handle:
            g = load_graph(handle)
        self.assertEqual(g.doc_count, 12)
        self.assertEqual(g.concept("cc_1382").superseded_by, "cc_1240")
        self.assertEqual(g.concept("cc_1240").authority.institution_level, 1)

    def test_errors_carry_line_numbers(self):
        cases = {
            "malformed json": (_stream(_concept("a"), "{not json"), 2),
            "duplicate id": (_stream(_concept("a"), _concept("a")), 2),
            "unknown kind": (_stream({"kind": "node", "id": "a"}), 1),
            "bad layer": (_stream(_concept("a", layer="Meta")), 1),
            "dangling endpoint": (
                _stream(_concept("a"), {"kind": "relation", "from": "a", "to": "b", "weight": 0.5}),
                2,
            ),
            "embedding mismatch": (
                _stream(_concept("a", embedding=[1, 0]), _concept("b", embedding=[1, 0, 0])),
                2,
            ),
        }
        for name, (stream, line) in cases.items():
            with self.subTest(name):
                with self.assertRaises(GraphLoadError) as ctx:
                    load_graph(stream, source_name="g.kg.jsonl")
                self.assertEqual(ctx.exception.line, line)
                self.assertIn(f"g.kg.jsonl:{line}", str(ctx.exception))

    def test_empty_stream(self):
        with self.assertRaises(GraphLoadError):
            load_graph(io.BytesIO(b"\n\n"))

    def test_invalid_relation_weight(self):
        stream = _stream(
            _concept("a"), _concept("b"), {"kind": "relation", "from": "a", "to": "b", "weight": 0}
        )
        with self.assertRaises(GraphLoadError):
            load_graph(stream)

    def test_declared_avgdl_must_match(self):
        with self.assertRaises(GraphLoadError):
            load_graph(_stream({"kind": "meta", "avgdl": 3.0}, _concept("a")))
        g = load_graph(_stream({"kind": "meta", "avgdl": 2.0}, _concept("a")))
        self.assertEqual(g.avgdl, 2.0)


class TestSaveGraph(unittest.TestCase):
    def test_save_then_load_preserves_graph(self):
        rng = random.Random(11)
        for trial in range(100):
            g = random_graph(rng, embedding_dim=rng.choice([None, 3]))
            with self.subTest(trial=trial):
                sink = io.BytesIO()
                written = save_graph(g, sink)
                self.assertEqual(written, len(g.concepts) + len(g.relations))
                sink.seek(0)
                self.assertEqual(load_graph(sink), g)


if __name__ == "__main__":
    unittest.main()
