import unittest
from unittest.mock import MagicMock, patch

import requests

from lexgraph.errors import SearchError
from lexgraph.freshness_search import HttpSearchClient, parse_results


class TestHttpSearchClient(unittest.TestCase):
    @patch("requests.get")
    def test_query_parameters_and_parsing(self, mock_get):
        response = MagicMock()
        response.json.return_value = {
            "results": [
                {
                    "code": "art. 1240 CC",
                    "source_type": "statute",
                    "jurisdiction": "FR",
                    "effective_date": "2016-10-01",
                    "text": "Any act whatever of man",
                }
            ]
        }
        mock_get.return_value = response
        client = HttpSearchClient("http://search.local/api", timeout=3, max_results=5)
        results = client.search("fault liability", "FR")
        self.assertEqual(results[0].code, "CC-1240")
        _, kwargs = mock_get.call_args
        self.assertEqual(kwargs["params"], {"q": "fault liability", "limit": 5, "jurisdiction": "FR"})
        self.assertEqual(kwargs["timeout"], 3)

    @patch("requests.get", side_effect=requests.Timeout("slow"))
    def test_request_failure(self, mock_get):
        with self.assertRaises(SearchError):
            HttpSearchClient("http://search.local/api").search("fault")

    def test_malformed_records(self):
        with self.assertRaises(SearchError):
            parse_results({"results": "nope"}, "test")
        with self.assertRaises(SearchError) as ctx:
            parse_results([{"source_type": "Statute"}], "test")
        self.assertIn("result #0", str(ctx.exception))


if __name__ == "__main__":
    unittest.main()
