"""Locating numbers in free text and rewriting them in place.

Default behavior is minimal: a number is a maximal run of ASCII digits,
and everything else (decimal points, separators, signs) is left alone,
so "49.297" is two independent runs. Grouped mode additionally merges
runs joined by a thousands separator in strict 3-digit groups ("1,234"
but not "12,34"), stripping the separator from the captured digits.

Rewriting replaces each span with its space-separated token rendering,
padding with single spaces where the span abuts a non-space character.
Inversion replaces each well-formed rendered group with its digits and
touches nothing else; padding spaces inserted by the forward pass are
kept, so inversion is exact for texts whose numbers are already
space-delimited and space-normalizing otherwise.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

from .core import PdsConfig, decode_rendered, render_digits
from .errors import OversizeNumberError

_RUN_RE = re.compile(r"[0-9]+")


class OversizePolicy(Enum):
    PASS_THROUGH = "pass"
    ERROR = "error"


class SpanKind(Enum):
    INTEGER = "Integer"
    GROUPED_INTEGER = "GroupedInteger"


@dataclass(frozen=True)
class LocaleNumberFormat:
    """Separator conventions; grouped_mode opts in to separator merging."""

    thousands_separator: str | None = None
    decimal_separator: str | None = None
    grouped_mode: bool = False

    def __post_init__(self):
        for name in ("thousands_separator", "decimal_separator"):
            sep = getattr(self, name)
            if sep is None:
                continue
            if len(sep) != 1:
                raise ValueError(f"{name} must be a single character")
            if sep.isdigit():
                raise ValueError(f"{name} must not be a digit")
        if (
            self.thousands_separator is not None
            and self.thousands_separator == self.decimal_separator
        ):
            raise ValueError("thousands and decimal separators must differ")
        if self.grouped_mode and self.thousands_separator is None:
            raise ValueError("grouped_mode requires a thousands_separator")


@dataclass(frozen=True)
class ScanConfig:
    locale: LocaleNumberFormat = field(default_factory=LocaleNumberFormat)
    pds: PdsConfig = field(default_factory=PdsConfig)
    oversize_policy: OversizePolicy = OversizePolicy.PASS_THROUGH


@dataclass(frozen=True)
class NumberSpan:
    """A located numeric region: text[start:end] == raw, digits separator-free."""

    start: int
    end: int
    raw: str
    digits: str
    kind: SpanKind


def _grouped_re(separator: str) -> re.Pattern:
    sep = re.escape(separator)
    # First group 1-3 digits, then 3-digit groups only; no digit may abut
    # either edge (so "1234,567" and "1,2345" fall back to plain runs).
    return re.compile(rf"(?<![0-9])[0-9]{{1,3}}(?:{sep}[0-9]{{3}})+(?![0-9])")


def _iter_raw_spans(text: str, locale: LocaleNumberFormat) -> Iterator[tuple[int, int, SpanKind]]:
    if locale.grouped_mode:
        grouped = [
            (m.start(), m.end())
            for m in _grouped_re(locale.thousands_separator).finditer(text)
        ]
        taken = []
        gi = 0
        for m in _RUN_RE.finditer(text):
            while gi < len(grouped) and grouped[gi][1] <= m.start():
                gi += 1
            if gi < len(grouped) and grouped[gi][0] <= m.start() < grouped[gi][1]:
                if not taken or taken[-1] != grouped[gi]:
                    taken.append(grouped[gi])
                    yield grouped[gi][0], grouped[gi][1], SpanKind.GROUPED_INTEGER
                continue
            yield m.start(), m.end(), SpanKind.INTEGER
    else:
        for m in _RUN_RE.finditer(text):
            yield m.start(), m.end(), SpanKind.INTEGER


def scan(text: str, config: ScanConfig = ScanConfig()) -> list[NumberSpan]:
    """All numeric spans in order; oversize runs are dropped or raise."""
    spans: list[NumberSpan] = []
    sep = config.locale.thousands_separator
    for start, end, kind in _iter_raw_spans(text, config.locale):
        raw = text[start:end]
        digits = raw.replace(sep, "") if kind is SpanKind.GROUPED_INTEGER else raw
        if len(digits) > config.pds.max_digits:
            if config.oversize_policy is OversizePolicy.ERROR:
                raise OversizeNumberError(
                    f"{len(digits)}-digit number at offset {start} exceeds "
                    f"max_digits={config.pds.max_digits}"
                )
            continue
        spans.append(NumberSpan(start, end, raw, digits, kind))
    return spans


def pretokenize_text(text: str, config: ScanConfig = ScanConfig()) -> str:
    """Rewrite every scanned number as its boundary-delimited token stream."""
    spans = scan(text, config)
    if not spans:
        return text
    out: list[str] = []
    last = 0
    for span in spans:
        out.append(text[last:span.start])
        if span.start > 0 and not text[span.start - 1].isspace():
            out.append(" ")
        out.append(render_digits(span.digits, config.pds))
        if span.end < len(text) and not text[span.end].isspace():
            out.append(" ")
        last = span.end
    out.append(text[last:])
    return "".join(out)


def group_pattern(config: PdsConfig) -> re.Pattern:
    b = re.escape(config.boundary_token)
    # Loose shape: boundary, then single-space-separated digit runs, then
    # boundary. Candidates are validated strictly afterwards; digit-run
    # interiors that fail validation are errors, anything else (a lone
    # boundary, words between boundaries) is literal text.
    return re.compile(rf"(?<!\S){b}(?: [0-9]+)+ {b}(?!\S)")


def invert_pretokenization(text: str, config: ScanConfig = ScanConfig()) -> str:
    """Replace each well-formed rendered group with its digits.

    Boundary tokens that do not open a digit-run group are copied
    verbatim; groups that look like renderings but violate the grammar or
    the placevalue sequence raise rather than being repaired.
    """
    out: list[str] = []
    last = 0
    for m in group_pattern(config.pds).finditer(text):
        out.append(text[last:m.start()])
        out.append(decode_rendered(m.group(0), config.pds))
        last = m.end()
    out.append(text[last:])
    return "".join(out)
