"""Sentence-level exact-match metrics, error buckets, and vocabulary census.

Matching normalizes whitespace only (trim plus collapsing internal runs);
casing and punctuation are significant because normalization targets are.
Overall accuracy is 1 minus the sentence error rate by construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .core import PdsConfig, TokenKind, decode_tokens, parse_rendered
from .errors import (
    EmptyEvaluationError,
    MissingClassError,
    MissingMagnitudeError,
)
from .scanner import group_pattern

_RUN_RE = re.compile(r"[0-9]+")

# Classes whose source datasets are too unreliable to average over.
DEFAULT_EXCLUDED_CLASSES = frozenset({"ELECTRONIC", "ADDRESS", "FRACTION", "TELEPHONE"})

BUCKET_BELOW_MILLION = "<10^6"
BUCKET_MILLION_TO_BILLION = "10^6-10^9"
BUCKET_BILLION_PLUS = ">=10^9"


def normalize_match_text(text: str) -> str:
    """Trim and collapse whitespace; idempotent."""
    return " ".join(text.split())


class ErrorBucket(Enum):
    CORRECT = "CORRECT"
    IGNORABLE = "IGNORABLE"
    CRITICAL = "CRITICAL"
    FATAL = "FATAL"


@dataclass(frozen=True)
class EvalItem:
    gold: str
    predicted: str
    semiotic_class: str | None = None
    magnitude: int | None = None  # digit count of the governing number
    class_match: bool | None = None  # from an annotation sidecar when present

    def __post_init__(self):
        if not self.gold:
            raise ValueError("gold text must be non-empty")

    @property
    def norm_match(self) -> bool:
        return normalize_match_text(self.gold) == normalize_match_text(self.predicted)


def exact_match_accuracy(items: Sequence[EvalItem]) -> float:
    if not items:
        raise EmptyEvaluationError("no items to evaluate")
    return sum(1 for item in items if item.norm_match) / len(items)


def macro_average(per_class: Mapping[str, float], include: Sequence[str]) -> float:
    """Unweighted mean of per-class accuracies over ``include``."""
    if not include:
        raise MissingClassError("empty include list")
    missing = [c for c in include if c not in per_class]
    if missing:
        raise MissingClassError(f"no accuracy for {missing}")
    return sum(per_class[c] for c in include) / len(include)


def classify_error(class_match: bool, norm_match: bool) -> ErrorBucket:
    if class_match and norm_match:
        return ErrorBucket.CORRECT
    if not class_match and norm_match:
        return ErrorBucket.IGNORABLE
    if class_match and not norm_match:
        return ErrorBucket.CRITICAL
    return ErrorBucket.FATAL


def magnitude_bucket(magnitude: int) -> str:
    """Bucket label for a governing number with ``magnitude`` digits."""
    if magnitude <= 6:
        return BUCKET_BELOW_MILLION
    if magnitude <= 9:
        return BUCKET_MILLION_TO_BILLION
    return BUCKET_BILLION_PLUS


def sentence_magnitude(source_text: str) -> int | None:
    """Digit count of the longest digit run in a source sentence."""
    runs = _RUN_RE.findall(source_text)
    return max(len(r) for r in runs) if runs else None


def magnitude_bucket_report(items: Sequence[EvalItem]) -> dict[str, float]:
    """Exact-match accuracy per magnitude bucket; all items need magnitudes."""
    if not items:
        raise EmptyEvaluationError("no items to evaluate")
    totals: dict[str, int] = {}
    hits: dict[str, int] = {}
    for item in items:
        if item.magnitude is None:
            raise MissingMagnitudeError(f"item without magnitude: {item.gold[:40]!r}")
        bucket = magnitude_bucket(item.magnitude)
        totals[bucket] = totals.get(bucket, 0) + 1
        hits[bucket] = hits.get(bucket, 0) + (1 if item.norm_match else 0)
    return {bucket: hits[bucket] / totals[bucket] for bucket in totals}


@dataclass
class CensusReport:
    distinct_number_sequences: int = 0
    distinct_pairs: int = 0
    token_type_count: int = 0

    def to_dict(self) -> dict:
        return {
            "distinct_number_sequences": self.distinct_number_sequences,
            "distinct_pairs": self.distinct_pairs,
            "token_type_count": self.token_type_count,
        }


def vocabulary_census(
    source_lines: Iterable[str],
    mode: str,
    config: PdsConfig = PdsConfig(),
) -> CensusReport:
    """Corpus-level vocabulary statistics.

    raw mode counts distinct maximal digit-run strings. pds mode parses
    each rendered group strictly and counts distinct (facevalue,
    placevalue) pairs, distinct rendered token types, and distinct
    decoded digit strings.
    """
    if mode not in ("raw", "pds"):
        raise ValueError(f"unknown census mode {mode!r}")
    report = CensusReport()
    if mode == "raw":
        sequences: set[str] = set()
        for line in source_lines:
            sequences.update(_RUN_RE.findall(line))
        report.distinct_number_sequences = len(sequences)
        return report
    group_re = group_pattern(config)
    pairs: set[tuple[int, int]] = set()
    token_types: set[str] = set()
    decoded: set[str] = set()
    for line in source_lines:
        for m in group_re.finditer(line):
            tokens = parse_rendered(m.group(0), config)
            decoded.add(decode_tokens(tokens, config))
            for j, tok in enumerate(tokens):
                token_types.add(tok.render(config))
                if tok.kind is TokenKind.PLACE_VALUE:
                    pairs.add((tokens[j - 1].value, tok.value))
    report.distinct_number_sequences = len(decoded)
    report.distinct_pairs = len(pairs)
    report.token_type_count = len(token_types)
    return report


@dataclass
class EvalReport:
    overall_accuracy: float
    per_class: dict[str, float]
    macro_average: float | None
    magnitude_buckets: dict[str, float]
    error_counts: dict[ErrorBucket, int]
    n_items: int
    included_classes: tuple[str, ...] = ()

    @property
    def sentence_error_rate(self) -> float:
        return 1.0 - self.overall_accuracy

    def to_dict(self) -> dict:
        return {
            "n_items": self.n_items,
            "overall_accuracy": self.overall_accuracy,
            "sentence_error_rate": self.sentence_error_rate,
            "per_class": dict(sorted(self.per_class.items())),
            "macro_average": self.macro_average,
            "included_classes": list(self.included_classes),
            "magnitude_buckets": self.magnitude_buckets,
            "error_counts": {bucket.value: n for bucket, n in self.error_counts.items()},
        }


def build_report(
    items: Sequence[EvalItem],
    include_classes: Sequence[str] | None = None,
) -> EvalReport:
    """Aggregate every metric over one item set.

    Items without a class annotation are assumed class-correct when
    bucketing errors, so an unannotated exact match counts as CORRECT.
    The default macro include list is every observed class minus the
    unreliable ones; an explicit list must be covered by the data.
    """
    overall = exact_match_accuracy(items)

    per_class: dict[str, float] = {}
    by_class: dict[str, list[EvalItem]] = {}
    for item in items:
        if item.semiotic_class:
            by_class.setdefault(item.semiotic_class, []).append(item)
    for cls, cls_items in by_class.items():
        per_class[cls] = exact_match_accuracy(cls_items)

    if include_classes is not None:
        include = tuple(include_classes)
        macro = macro_average(per_class, include)
    else:
        include = tuple(sorted(set(per_class) - DEFAULT_EXCLUDED_CLASSES))
        macro = macro_average(per_class, include) if include else None

    with_magnitude = [item for item in items if item.magnitude is not None]
    buckets = magnitude_bucket_report(with_magnitude) if with_magnitude else {}

    error_counts: dict[ErrorBucket, int] = {}
    for item in items:
        class_match = item.class_match if item.class_match is not None else True
        bucket = classify_error(class_match, item.norm_match)
        error_counts[bucket] = error_counts.get(bucket, 0) + 1

    return EvalReport(
        overall_accuracy=overall,
        per_class=per_class,
        macro_average=macro,
        magnitude_buckets=buckets,
        error_counts=error_counts,
        n_items=len(items),
        included_classes=include,
    )
