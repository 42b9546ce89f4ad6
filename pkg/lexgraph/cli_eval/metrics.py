"""
Evaluation metrics: confusion-matrix ratios and n-gram overlap scores.

Undefined ratios (zero denominators) are ``None`` and render as "n/a".
BLEU-L is reported as the ROUGE-L statistic.
"""

import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from loguru import logger

from ..errors import ParameterError
from ..text import tokenize

UNDEFINED = "n/a"


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    fp: int = 0
    tn: int = 0
    fn: int = 0

    def __post_init__(self) -> None:
        if min(self.tp, self.fp, self.tn, self.fn) < 0:
            raise ParameterError(f"confusion counts must be >= 0: {self}")

    @classmethod
    def from_labels(cls, gold: Sequence[bool], pred: Sequence[bool]) -> "ConfusionCounts":
        if len(gold) != len(pred):
            raise ParameterError(f"{len(gold)} gold labels vs {len(pred)} predictions")
        pairs = Counter(zip(map(bool, gold), map(bool, pred)))
        return cls(
            tp=pairs[(True, True)],
            fp=pairs[(False, True)],
            tn=pairs[(False, False)],
            fn=pairs[(True, False)],
        )


def _ratio(numerator: int, denominator: int) -> Optional[float]:
    return numerator / denominator if denominator else None


def confusion_metrics(
    c: ConfusionCounts,
) -> tuple[Optional[float], Optional[float], Optional[float]]:
    """(sensitivity, specificity, precision)."""
    return (
        _ratio(c.tp, c.tp + c.fn),
        _ratio(c.tn, c.tn + c.fp),
        _ratio(c.tp, c.tp + c.fp),
    )


def ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _clipped_overlap(candidate: Sequence[str], reference: Sequence[str], n: int) -> tuple[int, int, int]:
    cand, ref = ngrams(candidate, n), ngrams(reference, n)
    overlap = sum(min(count, ref[gram]) for gram, count in cand.items())
    return overlap, sum(cand.values()), sum(ref.values())


def bleu_n(candidate: Sequence[str], reference: Sequence[str], n: int = 1) -> float:
    """
    Cumulative BLEU-n: geometric mean of the clipped 1..n-gram precisions times
    the brevity penalty exp(min(0, 1 - |ref| / |cand|)). Orders longer than
    either sentence are left out of the mean.
    """
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    if not candidate or not reference:
        return 0.0
    orders = range(1, min(n, len(candidate), len(reference)) + 1)
    log_precisions = []
    for order in orders:
        overlap, total, _ = _clipped_overlap(candidate, reference, order)
        if overlap == 0:
            return 0.0
        log_precisions.append(math.log(overlap / total))
    brevity = math.exp(min(0.0, 1.0 - len(reference) / len(candidate)))
    return min(1.0, brevity * math.exp(math.fsum(log_precisions) / len(log_precisions)))


def _f_measure(overlap: int, cand_total: int, ref_total: int) -> float:
    if overlap == 0 or cand_total == 0 or ref_total == 0:
        return 0.0
    precision, recall = overlap / cand_total, overlap / ref_total
    return 2 * precision * recall / (precision + recall)


def rouge_n(candidate: Sequence[str], reference: Sequence[str], n: int = 1) -> float:
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    return _f_measure(*_clipped_overlap(candidate, reference, n))


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    if not a or not b:
        return 0
    previous = [0] * (len(b) + 1)
    for x in a:
        current = [0]
        for j, y in enumerate(b, start=1):
            current.append(previous[j - 1] + 1 if x == y else max(previous[j], current[j - 1]))
        previous = current
    return previous[-1]


def rouge_l(candidate: Sequence[str], reference: Sequence[str]) -> float:
    return _f_measure(lcs_length(candidate, reference), len(candidate), len(reference))


@dataclass(frozen=True)
class EvalReport:
    pairs: int
    bleu_1: float
    bleu_2: float
    bleu_l: float
    rouge_1: float
    rouge_2: float
    rouge_l: float
    sensitivity: Optional[float] = None
    specificity: Optional[float] = None
    precision: Optional[float] = None
    confusion: Optional[ConfusionCounts] = None

    def as_dict(self) -> dict:
        data: dict = {
            "pairs": self.pairs,
            "bleu_1": self.bleu_1,
            "bleu_2": self.bleu_2,
            "bleu_l": self.bleu_l,
            "rouge_1": self.rouge_1,
            "rouge_2": self.rouge_2,
            "rouge_l": self.rouge_l,
        }
        if self.confusion is not None:
            data["confusion"] = vars(self.confusion).copy()
            for name in ("sensitivity", "specificity", "precision"):
                value = getattr(self, name)
                data[name] = UNDEFINED if value is None else value
        return data


def _mean(values: list[float]) -> float:
    return math.fsum(values) / len(values) if values else 0.0


def evaluate_pairs(
    candidates: Sequence[str],
    references: Sequence[str],
    labels: Optional[Iterable[tuple[bool, bool]]] = None,
) -> EvalReport:
    if len(candidates) != len(references):
        raise ParameterError(
            f"{len(candidates)} candidates vs {len(references)} references"
        )
    tokenized = [(tokenize(c), tokenize(r)) for c, r in zip(candidates, references)]
    rl = _mean([rouge_l(c, r) for c, r in tokenized])
    confusion = None
    sensitivity = specificity = precision = None
    if labels is not None:
        label_pairs = list(labels)
        confusion = ConfusionCounts.from_labels(
            [g for g, _ in label_pairs], [p for _, p in label_pairs]
        )
        sensitivity, specificity, precision = confusion_metrics(confusion)
    report = EvalReport(
        pairs=len(tokenized),
        bleu_1=_mean([bleu_n(c, r, 1) for c, r in tokenized]),
        bleu_2=_mean([bleu_n(c, r, 2) for c, r in tokenized]),
        bleu_l=rl,
        rouge_1=_mean([rouge_n(c, r, 1) for c, r in tokenized]),
        rouge_2=_mean([rouge_n(c, r, 2) for c, r in tokenized]),
        rouge_l=rl,
        sensitivity=sensitivity,
        specificity=specificity,
        precision=precision,
        confusion=confusion,
    )
    logger.info(f"Evaluated {report.pairs} candidate/reference pairs")
    return report


_TRUE = {"1", "true", "yes", "y", "t"}
_FALSE = {"0", "false", "no", "n", "f"}


def _parse_bool(raw: str, where: str) -> bool:
    value = raw.strip().lower()
    if value in _TRUE:
        return True
    if value in _FALSE:
        return False
    raise ParameterError(f"{where}: not a boolean label {raw!r}")


def read_lines(path: Union[str, Path]) -> list[str]:
    """One text per line; a trailing newline does not add an empty text."""
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read().splitlines()
    except OSError as e:
        raise ParameterError(f"cannot read {path}: {e}") from e


def read_labels(path: Union[str, Path]) -> list[tuple[bool, bool]]:
    """``gold pred`` per line (whitespace separated); blank and ``#`` lines are skipped."""
    labels = []
    for lineno, line in enumerate(read_lines(path), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split()
        where = f"{path}:{lineno}"
        if len(parts) != 2:
            raise ParameterError(f"{where}: expected 'gold pred', got {line!r}")
        labels.append((_parse_bool(parts[0], where), _parse_bool(parts[1], where)))
    return labels
