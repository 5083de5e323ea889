"""Positional description scheme (PDS) toolkit.

Numbers in text are rewritten digit by digit as facevalue/placevalue
token pairs between boundary markers ("123" -> "_ 1 03 2 02 3 01 _"),
which collapses the open-ended space of digit strings onto a closed
vocabulary of 31 token types and at most 200 facevalue/placevalue
combinations at the default 20-digit limit. The package bundles the
codec, a text scanner, corpus preparation, synthetic data generators,
and an exact-match evaluation harness around that scheme.
"""

from .arith import (
    ArithConfig,
    ArithRecord,
    evaluate_expression,
    generate_records,
    render_record,
    score_answers,
)
from .core import (
    PdsConfig,
    PdsToken,
    TokenKind,
    decode_rendered,
    decode_tokens,
    encode_digits,
    pds_vocabulary,
    render_digits,
    render_tokens,
)
from .corpus import (
    CorpusSplit,
    SplitSpec,
    TnSentence,
    TnToken,
    assemble_pair,
    emit_parallel,
    parse_kestrel_stream,
    split_corpus,
)
from .errors import PdsError
from .evaluate import (
    ErrorBucket,
    EvalItem,
    EvalReport,
    build_report,
    classify_error,
    exact_match_accuracy,
    macro_average,
    magnitude_bucket_report,
    vocabulary_census,
)
from .scanner import (
    LocaleNumberFormat,
    NumberSpan,
    OversizePolicy,
    ScanConfig,
    SpanKind,
    invert_pretokenization,
    pretokenize_text,
    scan,
)
from .verbalize import (
    SyntheticRecord,
    VerbalizationStyle,
    generate_synthetic_cardinal_set,
    verbalize_cardinal,
    verbalize_decimal,
    verbalize_digits,
    verbalize_time,
)

__version__ = "0.1.0"

# Text-level aliases used by binding layers.
encode_text = pretokenize_text
decode_text = invert_pretokenization
