"""Flat arithmetic expressions: exact evaluation, generation, scoring.

Expressions are "operand (operator operand)*" over non-negative decimal
literals and {+, -, *}; multiplication binds tighter than addition and
subtraction, which associate left. All arithmetic is exact Python
integers (six operands near 10^10 under * reach ~10^60).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import EmptyEvaluationError, LengthMismatchError, ParseError, PdsError
from .rng import record_stream
from .scanner import ScanConfig, invert_pretokenization, pretokenize_text

OPERATORS = ("+", "-", "*")

_WS_RUN = re.compile(r"\s+")
_SIGN_SPACE = re.compile(r"^-\s+")


def evaluate_expression(expression: str) -> int:
    """Exact value of a flat +/-/* expression, multiplication first."""
    pos = 0
    n = len(expression)
    tokens: list[tuple[str, int]] = []
    while pos < n:
        ch = expression[pos]
        if ch.isspace():
            pos += 1
            continue
        start = pos
        if ch.isdigit() and ch.isascii():
            while pos < n and expression[pos].isascii() and expression[pos].isdigit():
                pos += 1
            tokens.append((expression[start:pos], start))
        elif ch in OPERATORS:
            tokens.append((ch, start))
            pos += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", start)
    if not tokens:
        raise ParseError("empty expression", 0)

    def expect_operand(idx: int) -> int:
        if idx >= len(tokens):
            raise ParseError("expression ends after an operator", n)
        text, at = tokens[idx]
        if text in OPERATORS:
            raise ParseError(f"expected operand, got {text!r}", at)
        return int(text)

    total = 0
    sign = 1
    term = expect_operand(0)
    idx = 1
    while idx < len(tokens):
        op, at = tokens[idx]
        if op not in OPERATORS:
            raise ParseError(f"expected operator, got {op!r}", at)
        operand = expect_operand(idx + 1)
        if op == "*":
            term *= operand
        else:
            total += sign * term
            sign = 1 if op == "+" else -1
            term = operand
        idx += 2
    return total + sign * term


@dataclass(frozen=True)
class ArithConfig:
    min_ops: int = 2
    max_ops: int = 5
    operand_bound: int = 10**10  # exclusive
    operators: tuple[str, ...] = OPERATORS
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.min_ops <= self.max_ops:
            raise ValueError("need 1 <= min_ops <= max_ops")
        if self.operand_bound < 1:
            raise ValueError("operand_bound must be >= 1")
        if not self.operators or not set(self.operators) <= set(OPERATORS):
            raise ValueError(f"operators must be a non-empty subset of {OPERATORS}")


@dataclass(frozen=True)
class ArithRecord:
    expression: str
    value: int


def generate_records(count: int, config: ArithConfig) -> list[ArithRecord]:
    """Deterministic equation dataset; record i depends only on (seed, i)."""
    op_pool = sorted(set(config.operators))
    records = []
    for i in range(count):
        stream = record_stream(config.seed, i)
        n_ops = stream.randint(config.min_ops, config.max_ops)
        parts = [str(stream.below(config.operand_bound))]
        for _ in range(n_ops):
            parts.append(op_pool[stream.below(len(op_pool))])
            parts.append(str(stream.below(config.operand_bound)))
        expression = " ".join(parts)
        records.append(ArithRecord(expression, evaluate_expression(expression)))
    return records


def render_record(
    record: ArithRecord,
    pds_enabled: bool,
    config: ScanConfig = ScanConfig(),
) -> tuple[str, str]:
    """(source, target) lines; with PDS on, both sides are rewritten.

    A negative value keeps its sign verbatim outside the boundaries
    ("-5" -> "- _ 5 01 _").
    """
    source = record.expression
    target = str(record.value)
    if pds_enabled:
        source = pretokenize_text(source, config)
        target = pretokenize_text(target, config)
    return source, target


def render_eqn(record: ArithRecord, pds_enabled: bool, config: ScanConfig = ScanConfig()) -> str:
    source, target = render_record(record, pds_enabled, config)
    return f"{source} = {target}"


def normalize_answer(line: str, pds_enabled: bool, config: ScanConfig = ScanConfig()) -> str:
    """Canonical decimal form of an answer line for comparison.

    Inverts PDS when enabled, trims and collapses whitespace, and closes
    the padding gap after a leading sign.
    """
    if pds_enabled:
        line = invert_pretokenization(line, config)
    line = _WS_RUN.sub(" ", line.strip())
    return _SIGN_SPACE.sub("-", line)


def score_answers(
    predicted_lines: list[str],
    gold_records: list[ArithRecord],
    pds_enabled: bool,
    config: ScanConfig = ScanConfig(),
) -> float:
    """Fraction of predictions equal to the gold value's decimal rendering.

    Malformed PDS in a prediction counts as incorrect, never aborts.
    """
    if len(predicted_lines) != len(gold_records):
        raise LengthMismatchError(
            f"{len(predicted_lines)} predictions vs {len(gold_records)} gold records"
        )
    if not gold_records:
        raise EmptyEvaluationError("no records to score")
    correct = 0
    for line, record in zip(predicted_lines, gold_records):
        try:
            normalized = normalize_answer(line, pds_enabled, config)
        except PdsError:
            continue
        if normalized == str(record.value):
            correct += 1
    return correct / len(gold_records)
