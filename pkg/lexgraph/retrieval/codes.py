"""
Legal code normalization and code matching.

Canonical codes are uppercase alphanumeric segments joined by hyphens, with
purely alphabetic segments (the code family, e.g. ``CC``) first and the
remaining segments in their original order:

    "art. 1382, CC"   -> "CC-1382"
    "cc 1382 al. 2"   -> "CC-1382-2"
    "Tax-07"          -> "TAX-07"
    "§ 823 BGB"       -> "BGB-823"

Designator words (article, section, paragraph, ...) are dropped.
"""

import re

from .params import MatchParams

_SEGMENT = re.compile(r"[A-Za-z0-9]+")

DESIGNATORS = frozenset(
    {
        "ART",
        "ARTS",
        "ARTICLE",
        "ARTICLES",
        "SEC",
        "SECT",
        "SECTION",
        "SECTIONS",
        "PARA",
        "PARAGRAPH",
        "AL",
        "ALINEA",
        "NO",
        "NR",
        "OF",
        "THE",
    }
)

_CANONICAL = re.compile(r"\b[A-Z][A-Z0-9]*(?:-[A-Z0-9]+)+\b")
_ARTICLE = re.compile(
    r"(?:\b(?i:art(?:icle)?s?)\.?|§)\s*(\d+[A-Za-z]?(?:[-.]\d+)*)\s*,?\s*"
    r"(?:of\s+the\s+)?([A-Z]{2,8})\b"
)


def _is_alpha(segment: str) -> bool:
    return segment.isalpha()


def normalize_code(raw: str) -> str:
    """Canonical form of a legal code; idempotent, empty input gives an empty code."""
    segments = [s.upper() for s in _SEGMENT.findall(raw)]
    segments = [s for s in segments if s not in DESIGNATORS]
    family = [s for s in segments if _is_alpha(s)]
    rest = [s for s in segments if not _is_alpha(s)]
    return "-".join(family + rest)


def extract_codes(text: str) -> list[str]:
    """Normalized codes mentioned in free text, in order of first appearance."""
    found: list[tuple[int, str]] = []
    for match in _CANONICAL.finditer(text):
        found.append((match.start(), normalize_code(match.group(0))))
    for match in _ARTICLE.finditer(text):
        found.append((match.start(), normalize_code(f"{match.group(2)} {match.group(1)}")))
    codes: list[str] = []
    for _, code in sorted(found):
        if code and code not in codes:
            codes.append(code)
    return codes


def partial_match(c_code: str, q_code: str) -> float:
    """Shared leading segments over the larger segment count."""
    if not c_code or not q_code:
        return 0.0
    c_segments, q_segments = c_code.split("-"), q_code.split("-")
    shared = 0
    for c_seg, q_seg in zip(c_segments, q_segments):
        if c_seg != q_seg:
            break
        shared += 1
    return shared / max(len(c_segments), len(q_segments))


def code_match(c_code: str, q_code: str, p: MatchParams) -> float:
    if not c_code or not q_code:
        return 0.0
    exact = 1.0 if c_code == q_code else 0.0
    return p.gamma * exact + (1.0 - p.gamma) * partial_match(c_code, q_code)
