"""Digit-level positional description scheme (PDS) encoding and decoding.

A digit string is rewritten as a boundary-delimited stream of alternating
facevalue and placevalue tokens: "123" becomes "_ 1 03 2 02 3 01 _".
Placevalues count from the least significant digit (1 = units) and are
rendered zero-padded at a fixed width, so the whole scheme closes over a
vocabulary of ``1 + 10 + max_digits`` token texts and at most
``10 * max_digits`` distinct (facevalue, placevalue) pairs.

The space-separated rendering produced here is the stable wire format
consumed by every other module.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import (
    EmptyInputError,
    MalformedStreamError,
    NonDigitError,
    PlaceValueGapError,
    TooManyDigitsError,
)

_DIGITS = frozenset("0123456789")


@dataclass(frozen=True)
class PdsConfig:
    """Limits and rendering parameters for the scheme.

    ``max_digits`` bounds the representable magnitude (20 digits reaches
    one hundred quintillion, 10^20). ``placevalue_width`` is the fixed
    zero-padded width of placevalue tokens and must be wide enough to
    render ``max_digits``.
    """

    max_digits: int = 20
    boundary_token: str = "_"
    placevalue_width: int = 2

    def __post_init__(self):
        if self.max_digits < 1:
            raise ValueError("max_digits must be positive")
        if self.placevalue_width < 1:
            raise ValueError("placevalue_width must be positive")
        if self.max_digits > 10**self.placevalue_width - 1:
            raise ValueError(
                f"max_digits={self.max_digits} not representable at "
                f"placevalue_width={self.placevalue_width}"
            )
        if not self.boundary_token:
            raise ValueError("boundary_token must be non-empty")
        if any(c in _DIGITS for c in self.boundary_token):
            raise ValueError("boundary_token must not contain decimal digits")
        if any(c.isspace() for c in self.boundary_token):
            # the wire format is space-separated; a spaced boundary could
            # never be parsed back out of its own rendering
            raise ValueError("boundary_token must not contain whitespace")

    def render_placevalue(self, place: int) -> str:
        return str(place).zfill(self.placevalue_width)

    @property
    def pair_bound(self) -> int:
        """Upper bound on distinct (facevalue, placevalue) combinations."""
        return 10 * self.max_digits


class TokenKind(Enum):
    BOUNDARY = "Boundary"
    FACE_VALUE = "FaceValue"
    PLACE_VALUE = "PlaceValue"


@dataclass(frozen=True, slots=True)
class PdsToken:
    """One unit of the encoded stream.

    ``value`` is the digit 0-9 for facevalues, the 1-based position from
    the least significant digit for placevalues, and None for boundaries.
    """

    kind: TokenKind
    value: int | None = None

    def __post_init__(self):
        if self.kind is TokenKind.BOUNDARY:
            if self.value is not None:
                raise ValueError("boundary tokens carry no value")
        elif self.kind is TokenKind.FACE_VALUE:
            if self.value is None or not 0 <= self.value <= 9:
                raise ValueError(f"facevalue out of range: {self.value!r}")
        else:
            if self.value is None or self.value < 1:
                raise ValueError(f"placevalue out of range: {self.value!r}")

    @staticmethod
    def boundary() -> "PdsToken":
        return PdsToken(TokenKind.BOUNDARY)

    @staticmethod
    def face(digit: int) -> "PdsToken":
        return PdsToken(TokenKind.FACE_VALUE, digit)

    @staticmethod
    def place(position: int) -> "PdsToken":
        return PdsToken(TokenKind.PLACE_VALUE, position)

    def render(self, config: PdsConfig) -> str:
        if self.kind is TokenKind.BOUNDARY:
            return config.boundary_token
        if self.kind is TokenKind.FACE_VALUE:
            return str(self.value)
        return config.render_placevalue(self.value)


def _check_digits(digits: str, config: PdsConfig) -> None:
    if not digits:
        raise EmptyInputError("no digits to encode")
    if len(digits) > config.max_digits:
        raise TooManyDigitsError(
            f"{len(digits)} digits exceeds max_digits={config.max_digits}"
        )
    for ch in digits:
        if ch not in _DIGITS:
            raise NonDigitError(f"unexpected character {ch!r}")


def encode_digits(digits: str, config: PdsConfig = PdsConfig()) -> list[PdsToken]:
    """Encode a digit string (leading zeros included verbatim) as tokens.

    Output is [Boundary] + [face(d_i), place(len-i) for each digit] +
    [Boundary]; placevalues descend strictly from len(digits) to 1.
    """
    _check_digits(digits, config)
    n = len(digits)
    tokens = [PdsToken.boundary()]
    for i, ch in enumerate(digits):
        tokens.append(PdsToken.face(int(ch)))
        tokens.append(PdsToken.place(n - i))
    tokens.append(PdsToken.boundary())
    return tokens


def decode_tokens(tokens: Sequence[PdsToken], config: PdsConfig = PdsConfig()) -> str:
    """Strict inverse of encode_digits for a single token group.

    The stream must be exactly Boundary (FaceValue PlaceValue)+ Boundary
    with placevalues running contiguously from the digit count down to 1;
    anything else raises rather than being repaired.
    """
    if len(tokens) < 4:
        raise MalformedStreamError(f"stream too short ({len(tokens)} tokens)")
    if tokens[0].kind is not TokenKind.BOUNDARY or tokens[-1].kind is not TokenKind.BOUNDARY:
        raise MalformedStreamError("stream must start and end with a boundary")
    interior = tokens[1:-1]
    if len(interior) % 2 != 0:
        raise MalformedStreamError("facevalue without a following placevalue")
    n_pairs = len(interior) // 2
    for j in range(n_pairs):
        face, place = interior[2 * j], interior[2 * j + 1]
        if face.kind is not TokenKind.FACE_VALUE:
            raise MalformedStreamError(f"expected facevalue at pair {j}, got {face.kind.value}")
        if place.kind is not TokenKind.PLACE_VALUE:
            raise MalformedStreamError(f"expected placevalue at pair {j}, got {place.kind.value}")
        if place.value > config.max_digits:
            raise MalformedStreamError(
                f"placevalue {place.value} exceeds max_digits={config.max_digits}"
            )
    digits = []
    for j in range(n_pairs):
        face, place = interior[2 * j], interior[2 * j + 1]
        expected = n_pairs - j
        if place.value != expected:
            raise PlaceValueGapError(
                f"placevalue {place.value} at pair {j}, expected {expected}"
            )
        digits.append(str(face.value))
    return "".join(digits)


def render_tokens(tokens: Iterable[PdsToken], config: PdsConfig = PdsConfig()) -> str:
    """Space-separated wire rendering of a token sequence."""
    return " ".join(tok.render(config) for tok in tokens)


def render_digits(digits: str, config: PdsConfig = PdsConfig()) -> str:
    """encode_digits + render_tokens fused; the hot path for text rewriting."""
    _check_digits(digits, config)
    n = len(digits)
    b = config.boundary_token
    parts = [b]
    for i, ch in enumerate(digits):
        parts.append(ch)
        parts.append(config.render_placevalue(n - i))
    parts.append(b)
    return " ".join(parts)


def parse_rendered(text: str, config: PdsConfig = PdsConfig()) -> list[PdsToken]:
    """Parse one space-separated rendering back into tokens.

    Token texts are classified by the grammar position (after a boundary
    or placevalue comes a facevalue; after a facevalue comes a
    placevalue), which keeps parsing unambiguous even at
    placevalue_width=1.
    """
    words = text.split()
    if not words:
        raise MalformedStreamError("empty stream")
    tokens: list[PdsToken] = []
    for word in words:
        prev = tokens[-1] if tokens else None
        if prev is not None and prev.kind is TokenKind.FACE_VALUE:
            if len(word) == config.placevalue_width and all(c in _DIGITS for c in word):
                value = int(word)
                if value < 1:
                    raise MalformedStreamError(f"invalid placevalue {word!r}")
                tokens.append(PdsToken.place(value))
            else:
                raise MalformedStreamError(f"expected placevalue, got {word!r}")
        else:  # at stream start, after a boundary, or after a placevalue
            if word == config.boundary_token:
                tokens.append(PdsToken.boundary())
            elif len(word) == 1 and word in _DIGITS:
                tokens.append(PdsToken.face(int(word)))
            else:
                raise MalformedStreamError(f"expected facevalue or boundary, got {word!r}")
    return tokens


def decode_rendered(text: str, config: PdsConfig = PdsConfig()) -> str:
    """Decode one rendered group ("_ 1 03 2 02 3 01 _") to its digits."""
    return decode_tokens(parse_rendered(text, config), config)


def pds_vocabulary(config: PdsConfig = PdsConfig()) -> set[str]:
    """Every rendered token text the scheme can emit under this config."""
    vocab = {config.boundary_token}
    vocab.update(str(d) for d in range(10))
    vocab.update(config.render_placevalue(p) for p in range(1, config.max_digits + 1))
    return vocab
