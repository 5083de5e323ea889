"""Tab-separated normalization corpus: parsing, splitting, and emission.

Input records are "CLASS<tab>INPUT<tab>OUTPUT" lines; a line whose first
two fields are "<eos>" ends the sentence. An output of "<self>" resolves
to the input token, "sil" (silence on punctuation) also resolves to the
input token, and anything else is used as-is. Sentence source/target
texts are the resolved tokens joined by single spaces.

Splits are deterministic functions of (sentences, seed): records are
permuted by their per-record splitmix64 key, the held-out set is the
first slice, train sets are nested prefixes of the remainder, and
per-class sets are filled in permutation order from records outside the
train block.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import InsufficientDataError, MalformedLineError
from .fileio import atomic_write
from .rng import record_key
from .scanner import ScanConfig, pretokenize_text

logger = logging.getLogger(__name__)

SELF_MARKER = "<self>"
SIL_MARKER = "sil"
EOS_MARKER = "<eos>"


@dataclass(frozen=True)
class TnToken:
    semiotic_class: str
    input: str
    output: str


@dataclass(frozen=True)
class TnSentence:
    tokens: tuple[TnToken, ...]

    @property
    def source_text(self) -> str:
        return assemble_pair(self)[0]

    @property
    def target_text(self) -> str:
        return assemble_pair(self)[1]

    def classes(self) -> set[str]:
        return {tok.semiotic_class for tok in self.tokens}


def resolve_output(token: TnToken) -> str:
    if token.output == SELF_MARKER or token.output == SIL_MARKER:
        return token.input
    return token.output


def assemble_pair(sentence: TnSentence) -> tuple[str, str]:
    """(source_text, target_text) for one sentence."""
    if not sentence.tokens:
        raise ValueError("cannot assemble an empty sentence")
    source = " ".join(tok.input for tok in sentence.tokens)
    target = " ".join(resolve_output(tok) for tok in sentence.tokens)
    return source, target


def parse_kestrel_stream(lines: Iterable[str], lenient: bool = False) -> Iterator[TnSentence]:
    """Parse tab-separated records into sentences.

    Malformed lines (wrong field count, empty class or input) raise with
    their line number, or are logged and skipped when ``lenient``.
    """
    pending: list[TnToken] = []
    line_no = 0
    for line in lines:
        line_no += 1
        line = line.rstrip("\r\n")
        fields = line.split("\t")
        if len(fields) >= 2 and fields[0] == EOS_MARKER and fields[1] == EOS_MARKER:
            if pending:
                yield TnSentence(tuple(pending))
                pending = []
            continue
        problem = None
        if len(fields) != 3:
            problem = f"expected 3 tab-separated fields, got {len(fields)}"
        elif not fields[0] or not fields[1]:
            problem = "empty class or input field"
        if problem is not None:
            if lenient:
                logger.warning("skipping malformed line %d: %s", line_no, problem)
                continue
            raise MalformedLineError(line_no, problem)
        pending.append(TnToken(fields[0], fields[1], fields[2]))
    if pending:
        yield TnSentence(tuple(pending))


@dataclass(frozen=True)
class SplitSpec:
    seed: int
    heldout_size: int = 10_000
    per_class_size: int = 1_000
    train_sizes: tuple[int, ...] = (100_000, 1_000_000, 10_000_000)

    def __post_init__(self):
        if self.heldout_size < 0 or self.per_class_size < 0:
            raise ValueError("sizes must be non-negative")
        if any(s < 0 for s in self.train_sizes):
            raise ValueError("train sizes must be non-negative")


@dataclass
class CorpusSplit:
    heldout: list[TnSentence]
    train_sets: dict[int, list[TnSentence]]
    per_class: dict[str, list[TnSentence]]
    seed: int


def split_corpus(sentences: Sequence[TnSentence], spec: SplitSpec) -> CorpusSplit:
    """Deterministic held-out / train / per-class split.

    Train sets are nested prefixes (every smaller set is contained in
    every larger one) and disjoint from the held-out set. Per-class sets
    are drawn from outside the train block, so they may overlap the
    held-out set and each other.
    """
    n = len(sentences)
    max_train = max(spec.train_sizes, default=0)
    if spec.heldout_size + max_train > n:
        raise InsufficientDataError(
            f"need {spec.heldout_size} held-out + {max_train} train sentences, "
            f"have {n} (short by {spec.heldout_size + max_train - n})"
        )
    order = sorted(range(n), key=lambda i: (record_key(spec.seed, i), i))
    heldout_idx = order[: spec.heldout_size]
    train_block = order[spec.heldout_size : spec.heldout_size + max_train]
    train_block_set = set(train_block)

    train_sets = {
        size: [sentences[i] for i in train_block[:size]] for size in spec.train_sizes
    }

    per_class: dict[str, list[TnSentence]] = {}
    if spec.per_class_size > 0:
        observed: set[str] = set()
        for sent in sentences:
            observed.update(sent.classes())
        per_class = {cls: [] for cls in sorted(observed)}
        unfilled = len(per_class)
        for i in order:
            if unfilled == 0:
                break
            if i in train_block_set:
                continue
            for cls in sentences[i].classes():
                bucket = per_class[cls]
                if len(bucket) < spec.per_class_size:
                    bucket.append(sentences[i])
                    if len(bucket) == spec.per_class_size:
                        unfilled -= 1
        short = {
            cls: spec.per_class_size - len(bucket)
            for cls, bucket in per_class.items()
            if len(bucket) < spec.per_class_size
        }
        if short:
            worst = ", ".join(f"{cls} short by {k}" for cls, k in sorted(short.items()))
            raise InsufficientDataError(f"per-class sets could not be filled: {worst}")

    return CorpusSplit(
        heldout=[sentences[i] for i in heldout_idx],
        train_sets=train_sets,
        per_class=per_class,
        seed=spec.seed,
    )


def emit_parallel(
    sentences: Iterable[TnSentence],
    src_path: str | Path,
    tgt_path: str | Path,
    pds_enabled: bool,
    config: ScanConfig = ScanConfig(),
) -> tuple[Path, Path]:
    """Write aligned .src/.tgt files, one sentence per line.

    PDS rewriting applies to the source side only; targets are words and
    are never modified.
    """
    src_path, tgt_path = Path(src_path), Path(tgt_path)
    with atomic_write(src_path) as src, atomic_write(tgt_path) as tgt:
        for sentence in sentences:
            source, target = assemble_pair(sentence)
            if pds_enabled:
                source = pretokenize_text(source, config)
            src.write(source + "\n")
            tgt.write(target + "\n")
    return src_path, tgt_path


def write_split(
    split: CorpusSplit,
    out_dir: str | Path,
    pds_enabled: bool,
    config: ScanConfig = ScanConfig(),
) -> dict:
    """Emit every split set plus a manifest.json describing the layout."""
    out_dir = Path(out_dir)
    sets: list[tuple[str, list[TnSentence]]] = [("heldout", split.heldout)]
    sets.extend((f"train_{size}", sentences) for size, sentences in sorted(split.train_sets.items()))
    sets.extend((f"class_{cls}", sentences) for cls, sentences in sorted(split.per_class.items()))

    manifest = {"seed": split.seed, "pds": pds_enabled, "sets": []}
    for name, sentences in sets:
        src, tgt = emit_parallel(
            sentences, out_dir / f"{name}.src", out_dir / f"{name}.tgt", pds_enabled, config
        )
        manifest["sets"].append(
            {"name": name, "size": len(sentences), "src": src.name, "tgt": tgt.name}
        )
    with atomic_write(out_dir / "manifest.json") as handle:
        json.dump(manifest, handle, indent=2)
        handle.write("\n")
    return manifest
