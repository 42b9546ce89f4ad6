import unittest

from lexgraph.text import jaccard, stem, tokenize


class TestTokenize(unittest.TestCase):
    def test_lowercases_and_splits_on_punctuation(self):
        self.assertEqual(
            tokenize("Art. 1382, Code-Civil_x"), ["art", "1382", "code", "civil", "x"]
        )

    def test_nfc_normalization(self):
        composed = "responsabilit\u00e9"
        decomposed = "RESPONSABILITE\u0301"
        self.assertEqual(tokenize(decomposed), [composed])

    def test_empty(self):
        self.assertEqual(tokenize(""), [])
        self.assertEqual(tokenize(" ,.; "), [])


class TestStem(unittest.TestCase):
    def test_known_stems(self):
        expected = {
            "damages": "damag",
            "damage": "damag",
            "contracts": "contract",
            "liabilities": "liabil",
            "negligent": "negligent",
            "obligations": "oblig",
            "parties": "parti",
            "party": "parti",
        }
        for word, root in expected.items():
            with self.subTest(word=word):
                self.assertEqual(stem(word), root)

    def test_short_words_unchanged(self):
        for word in ("law", "act", "tax"):
            with self.subTest(word=word):
                self.assertEqual(stem(word), word)


class TestJaccard(unittest.TestCase):
    def test_values(self):
        self.assertEqual(jaccard({"a", "b"}, {"b", "c"}), 1 / 3)
        self.assertEqual(jaccard({"a"}, {"a"}), 1.0)
        self.assertEqual(jaccard(set(), set()), 0.0)


if __name__ == "__main__":
    unittest.main()
