from .clients import FixtureSearchClient, HttpSearchClient, SearchClient, parse_results
from .merge import (
    authority_of,
    authority_score,
    filter_timely,
    merge_knowledge,
    record_authority,
    search_entry,
    search_knowledge,
)
from .models import AuthorityWeights, MergeParams, SearchResult

__all__ = [
    "AuthorityWeights",
    "FixtureSearchClient",
    "HttpSearchClient",
    "MergeParams",
    "SearchClient",
    "SearchResult",
    "authority_of",
    "authority_score",
    "filter_timely",
    "merge_knowledge",
    "parse_results",
    "record_authority",
    "search_entry",
    "search_knowledge",
]
