"""
Search clients: a fixture replayer for tests and offline runs, and a JSON
HTTP client for a live legal search endpoint.
"""

import json
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Iterable, Optional, Union

import requests
from loguru import logger

from ..errors import SearchError
from .models import SearchResult


def parse_results(records: Any, source: str) -> list[SearchResult]:
    if isinstance(records, dict):
        records = records.get("results")
    if not isinstance(records, list):
        raise SearchError(f"{source}: expected a list of search results")
    results = []
    for index, record in enumerate(records):
        try:
            results.append(SearchResult.from_record(record))
        except (KeyError, TypeError, ValueError) as e:
            raise SearchError(f"{source}: result #{index}: {e!r}") from e
    return results


class SearchClient(ABC):
    """Implementations must tolerate concurrent ``search`` calls."""

    @abstractmethod
    def search(self, query: str, jurisdiction: Optional[str] = None) -> list[SearchResult]:
        raise NotImplementedError


class FixtureSearchClient(SearchClient):
    """Replays the same fixture results for every query, in file order."""

    def __init__(self, results: Iterable[SearchResult], max_results: Optional[int] = None) -> None:
        self.results = tuple(results)
        self.max_results = max_results

    @classmethod
    def from_file(cls, path: Union[str, Path], max_results: Optional[int] = None) -> "FixtureSearchClient":
        try:
            with open(path, encoding="utf-8") as handle:
                records = json.load(handle)
        except OSError as e:
            raise SearchError(f"cannot open search fixture {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise SearchError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e
        results = parse_results(records, str(path))
        logger.info(f"Loaded {len(results)} search fixtures from {path}")
        return cls(results, max_results)

    def search(self, query: str, jurisdiction: Optional[str] = None) -> list[SearchResult]:
        results = list(self.results)
        return results[: self.max_results] if self.max_results is not None else results


class HttpSearchClient(SearchClient):
    def __init__(self, endpoint: str, timeout: float = 30.0, max_results: int = 10) -> None:
        self.endpoint = endpoint
        self.timeout = timeout
        self.max_results = max_results

    def search(self, query: str, jurisdiction: Optional[str] = None) -> list[SearchResult]:
        params: dict[str, Any] = {"q": query, "limit": self.max_results}
        if jurisdiction:
            params["jurisdiction"] = jurisdiction
        try:
            response = requests.get(self.endpoint, params=params, timeout=self.timeout)
            response.raise_for_status()
            records = response.json()
        except requests.RequestException as e:
            logger.error(f"Search request to {self.endpoint} failed: {e}")
            raise SearchError(f"search request failed: {e}") from e
        except ValueError as e:
            raise SearchError(f"search response is not JSON: {e}") from e
        logger.bind(trace=True).debug(f"GET {self.endpoint} response: {records}")
        return parse_results(records, self.endpoint)[: self.max_results]
