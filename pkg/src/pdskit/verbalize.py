"""Rule-based English number verbalization and synthetic sentence generation.

The word style is frozen to lowercase, hyphen-free, "and"-free output
("six hundred thirty one thousand eight hundred eighteen"). Digit-wise
reading says "zero" for 0. Times read minutes 1-9 with "oh" ("twelve oh
five") and reject :00 rather than guess a form.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import (
    EmptyInputError,
    NonDigitError,
    OutOfRangeError,
    UnsupportedError,
)
from .rng import record_stream

ONES = [
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight",
    "nine", "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen",
    "sixteen", "seventeen", "eighteen", "nineteen",
]

TENS = [
    "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy",
    "eighty", "ninety",
]

SCALES = ["thousand", "million", "billion", "trillion", "quadrillion", "quintillion"]

CARDINAL_LIMIT = 10**21  # one thousand quintillion; the largest scale word covers up to here


class VerbalizationStyle(Enum):
    CARDINAL = "cardinal"
    DIGIT_WISE = "digits"
    DECIMAL = "decimal"
    TIME = "time"


def _under_thousand(n: int) -> list[str]:
    words = []
    hundreds, rest = divmod(n, 100)
    if hundreds:
        words.append(ONES[hundreds])
        words.append("hundred")
    if rest >= 20:
        words.append(TENS[rest // 10])
        if rest % 10:
            words.append(ONES[rest % 10])
    elif rest or not words:
        words.append(ONES[rest])
    return words


def verbalize_cardinal(n: int) -> str:
    """Short-scale English cardinal for 0 <= n < 10^21."""
    if n < 0 or n >= CARDINAL_LIMIT:
        raise OutOfRangeError(f"cardinal out of range: {n}")
    if n == 0:
        return "zero"
    groups = []
    while n:
        n, g = divmod(n, 1000)
        groups.append(g)
    words: list[str] = []
    for k in range(len(groups) - 1, -1, -1):
        g = groups[k]
        if not g:
            continue
        words.extend(_under_thousand(g))
        if k:
            words.append(SCALES[k - 1])
    return " ".join(words)


def verbalize_digits(digits: str) -> str:
    """One word per digit ("6318" -> "six three one eight")."""
    if not digits:
        raise EmptyInputError("no digits to verbalize")
    words = []
    for ch in digits:
        if not ch.isascii() or not ch.isdigit():
            raise NonDigitError(f"unexpected character {ch!r}")
        words.append(ONES[int(ch)])
    return " ".join(words)


def verbalize_decimal(int_part: str, frac_part: str) -> str:
    """Cardinal integer part, then "point", then digit-wise fraction."""
    if not int_part:
        raise EmptyInputError("empty integer part")
    for ch in int_part:
        if not ch.isascii() or not ch.isdigit():
            raise NonDigitError(f"unexpected character {ch!r}")
    frac_words = verbalize_digits(frac_part)
    return f"{verbalize_cardinal(int(int_part))} point {frac_words}"


def verbalize_time(hh: int, mm: int) -> str:
    """24-hour clock reading ("23:54" -> "twenty three fifty four")."""
    if not 0 <= hh <= 23 or not 0 <= mm <= 59:
        raise OutOfRangeError(f"invalid clock value {hh:02d}:{mm:02d}")
    if mm == 0:
        raise UnsupportedError("minute 00 has no attested reading here")
    hour_words = verbalize_cardinal(hh)
    if mm < 10:
        return f"{hour_words} oh {verbalize_cardinal(mm)}"
    return f"{hour_words} {verbalize_cardinal(mm)}"


TEMPLATES = [
    "I have {} apples",
    "The library holds {} books",
    "About {} people attended the rally",
    "They walked {} steps yesterday",
    "The station served {} passengers last year",
    "Engineers logged {} events overnight",
    "The census counted {} residents",
    "The auction closed at {} dollars",
]


@dataclass(frozen=True)
class SyntheticRecord:
    """One generated sentence pair with its governing number."""

    source: str
    target: str
    value: int
    magnitude: int  # digit count of value
    template_id: int


def generate_synthetic_cardinal_set(
    count: int,
    magnitude_range: tuple[int, int],
    seed: int,
) -> list[SyntheticRecord]:
    """Deterministic sentences each carrying exactly one cardinal.

    ``magnitude_range`` is a half-open [lo, hi) range of powers of ten
    with 0 <= lo < hi <= 21; values are drawn log-uniformly by picking a
    digit count uniformly, then a value uniformly at that digit count.
    """
    lo, hi = magnitude_range
    if not (0 <= lo < hi <= 21):
        raise OutOfRangeError(f"magnitude range [{lo}, {hi}) not within [0, 21]")
    records = []
    for i in range(count):
        stream = record_stream(seed, i)
        template_id = stream.below(len(TEMPLATES))
        digit_count = lo + 1 + stream.below(hi - lo)
        low = 10 ** (digit_count - 1)
        value = low + stream.below(10**digit_count - low)
        template = TEMPLATES[template_id]
        records.append(
            SyntheticRecord(
                source=template.format(value),
                target=template.format(verbalize_cardinal(value)),
                value=value,
                magnitude=digit_count,
                template_id=template_id,
            )
        )
    return records
