"""Exception types shared across the toolkit.

Every error carries a stable ``code`` string (its bare name) so that CLI
output and foreign-language callers can match on it without parsing
free-form messages.
"""


class PdsError(Exception):
    """Base class for all toolkit errors."""

    code = "PdsError"

    def __str__(self) -> str:
        msg = super().__str__()
        return f"{self.code}: {msg}" if msg else self.code


class EmptyInputError(PdsError):
    """A digit string was required but none was given."""

    code = "EmptyInput"


class TooManyDigitsError(PdsError):
    """Digit string longer than the configured maximum."""

    code = "TooManyDigits"


class NonDigitError(PdsError):
    """A non-digit character appeared where only digits are allowed."""

    code = "NonDigit"


class MalformedStreamError(PdsError):
    """Token stream does not match the boundary (face place)+ boundary grammar."""

    code = "MalformedStream"


class PlaceValueGapError(PdsError):
    """Placevalues are not contiguous and descending down to 1."""

    code = "PlaceValueGap"


class OversizeNumberError(PdsError):
    """Scanned number exceeds the configured digit limit (strict policy only)."""

    code = "OversizeNumber"


class MalformedLineError(PdsError):
    """A corpus line has the wrong field count."""

    code = "MalformedLine"

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no


class InsufficientDataError(PdsError):
    """A requested split set could not be filled."""

    code = "InsufficientData"


class OutOfRangeError(PdsError):
    """Numeric argument outside the supported range."""

    code = "OutOfRange"


class UnsupportedError(PdsError):
    """Input shape the verbalizer deliberately refuses to guess at."""

    code = "Unsupported"


class ParseError(PdsError):
    """Malformed arithmetic expression."""

    code = "ParseError"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class LengthMismatchError(PdsError):
    """Prediction and gold sequences have different lengths."""

    code = "LengthMismatch"


class EmptyEvaluationError(PdsError):
    """An evaluation was requested over zero items."""

    code = "EmptyEvaluation"


class MissingClassError(PdsError):
    """Macro average requested over a class with no accuracy entry."""

    code = "MissingClass"


class MissingMagnitudeError(PdsError):
    """Magnitude bucketing requested for an item without a magnitude."""

    code = "MissingMagnitude"
