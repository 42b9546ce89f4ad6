"""
Exception hierarchy shared by every lexgraph subpackage.
"""

from typing import Any, Optional


class LexGraphError(Exception):
    """Base class for all lexgraph failures."""


class GraphLoadError(LexGraphError):
    """A knowledge graph stream could not be loaded or saved."""

    def __init__(
        self, message: str, line: Optional[int] = None, source: Optional[str] = None
    ) -> None:
        self.line = line
        self.source = source
        location = ""
        if source is not None:
            location += f"{source}"
        if line is not None:
            location += f"{':' if location else 'line '}{line}"
        super().__init__(f"{location}: {message}" if location else message)


class UnknownConceptError(LexGraphError, KeyError):
    def __init__(self, concept_id: str) -> None:
        self.concept_id = concept_id
        super().__init__(f"unknown concept id {concept_id!r}")

    def __str__(self) -> str:
        return self.args[0]


class ParameterError(LexGraphError, ValueError):
    """A parameter violates its range or normalization condition."""


class TermStatsError(LexGraphError):
    pass


class TemplateError(LexGraphError):
    pass


class ConfigError(LexGraphError):
    pass


class SearchError(LexGraphError):
    pass


class ProviderError(LexGraphError):
    """The completion provider failed; ``trace`` holds the iterations completed so far."""

    def __init__(self, message: str, trace: Optional[list[Any]] = None) -> None:
        self.trace = list(trace or [])
        super().__init__(message)
