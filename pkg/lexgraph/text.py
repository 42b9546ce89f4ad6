"""
Text utilities shared by all modules.

One tokenizer is used everywhere (graph statistics, BM25+, term matching,
quality assessment and evaluation metrics) so that corpus statistics and
query-side matching never disagree.
"""

import re
import unicodedata
from functools import lru_cache

_TOKEN = re.compile(r"[^\W_]+", re.UNICODE)

# Checked in order; the first suffix that leaves a stem of at least
# MIN_STEM characters is stripped.
_SUFFIXES = (
    "ational",
    "ization",
    "fulness",
    "iveness",
    "ousness",
    "ations",
    "ation",
    "ments",
    "ment",
    "ness",
    "ities",
    "ity",
    "ings",
    "ing",
    "ive",
    "ous",
    "ful",
    "ed",
    "al",
    "ly",
)
MIN_STEM = 3


def tokenize(text: str) -> list[str]:
    """Lowercased, NFC-normalized maximal runs of letters and digits."""
    normalized = unicodedata.normalize("NFC", text).lower()
    return _TOKEN.findall(normalized)


@lru_cache(maxsize=65536)
def stem(token: str) -> str:
    """
    Suffix-stripping stemmer.

    Plural handling runs first (``sses -> ss``, ``ies -> y``, trailing ``s``),
    then at most one derivational suffix is removed, then a trailing ``e``.
    Stems never get shorter than ``MIN_STEM`` characters.

    Examples:
        damages -> damag, damage -> damag, contracts -> contract,
        liabilities -> liabil, negligent -> negligent, obligations -> oblig
    """
    word = token.lower()
    if len(word) <= MIN_STEM:
        return word
    if word.endswith("sses"):
        word = word[:-2]
    elif word.endswith("ies") and len(word) - 3 >= MIN_STEM - 1:
        word = word[:-3] + "y"
    elif word.endswith("s") and not word.endswith("ss") and len(word) - 1 >= MIN_STEM:
        word = word[:-1]
    for suffix in _SUFFIXES:
        if word.endswith(suffix) and len(word) - len(suffix) >= MIN_STEM:
            word = word[: -len(suffix)]
            break
    if word.endswith("y") and len(word) - 1 >= MIN_STEM:
        word = word[:-1] + "i"
    if word.endswith("e") and len(word) - 1 >= MIN_STEM:
        word = word[:-1]
    return word


def jaccard(a: "set[str] | frozenset[str]", b: "set[str] | frozenset[str]") -> float:
    union = a | b
    if not union:
        return 0.0
    return len(a & b) / len(union)
