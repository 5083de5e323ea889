"""Command-line entry point: one subcommand per pipeline stage.

All text I/O is UTF-8 with "\\n" termination; CRLF input is normalized on
read. Exit codes: 0 success, 1 usage error, 2 data error (diagnostics with
line numbers on standard error). Named output files are written to a
temporary file and renamed on success, so a failed run leaves nothing
partial behind.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import ExitStack
from functools import partial

from . import __version__
from .arith import ArithConfig, generate_records, render_eqn, render_record
from .core import PdsConfig
from .corpus import SplitSpec, parse_kestrel_stream, split_corpus, write_split
from .errors import PdsError
from .evaluate import EvalItem, build_report, sentence_magnitude, vocabulary_census
from .fileio import atomic_write
from .scanner import (
    LocaleNumberFormat,
    OversizePolicy,
    ScanConfig,
    invert_pretokenization,
    pretokenize_text,
    scan,
)
from .verbalize import (
    VerbalizationStyle,
    generate_synthetic_cardinal_set,
    verbalize_cardinal,
    verbalize_decimal,
    verbalize_digits,
    verbalize_time,
)


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1; data errors exit 2 (argparse default is 2 for both)
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_scan_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", choices=["minimal", "grouped"], default="minimal")
    parser.add_argument("--thousands-sep", default=None, metavar="CHAR")
    parser.add_argument("--decimal-sep", default=None, metavar="CHAR")
    parser.add_argument("--max-digits", type=int, default=20)
    parser.add_argument("--boundary-token", default="_", metavar="TEXT")
    parser.add_argument(
        "--oversize", choices=["pass", "error"], default="pass",
        help="what to do with digit runs longer than --max-digits",
    )


def _add_io_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-i", "--input", default=None, metavar="FILE")
    parser.add_argument("-o", "--output", default=None, metavar="FILE")


def _scan_config(args) -> ScanConfig:
    grouped = args.mode == "grouped"
    thousands = args.thousands_sep
    if grouped and thousands is None:
        thousands = ","
    try:
        locale = LocaleNumberFormat(
            thousands_separator=thousands,
            decimal_separator=args.decimal_sep,
            grouped_mode=grouped,
        )
        pds = PdsConfig(max_digits=args.max_digits, boundary_token=args.boundary_token)
    except ValueError as exc:
        raise _UsageError(str(exc))
    return ScanConfig(
        locale=locale,
        pds=pds,
        oversize_policy=OversizePolicy.ERROR if args.oversize == "error" else OversizePolicy.PASS_THROUGH,
    )


class _UsageError(Exception):
    pass


class _DataError(Exception):
    pass


def _open_input(stack: ExitStack, path: str | None):
    if path in (None, "-"):
        return sys.stdin
    return stack.enter_context(open(path, encoding="utf-8"))


def _open_output(stack: ExitStack, path: str | None):
    if path in (None, "-"):
        return sys.stdout
    return stack.enter_context(atomic_write(path))


def _transform_line(item: tuple[int, str], op: str, config: ScanConfig) -> tuple[int, str, str | None]:
    line_no, line = item
    try:
        if op == "encode":
            return line_no, pretokenize_text(line, config), None
        return line_no, invert_pretokenization(line, config), None
    except PdsError as exc:
        return line_no, "", f"line {line_no}: {exc}"


def _iter_transformed(lines, op: str, config: ScanConfig, jobs: int):
    items = ((i, line.rstrip("\r\n")) for i, line in enumerate(lines, start=1))
    worker = partial(_transform_line, op=op, config=config)
    if jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            yield from pool.imap(worker, items, chunksize=256)
    else:
        for item in items:
            yield worker(item)


def _cmd_codec(args, op: str) -> int:
    config = _scan_config(args)
    with ExitStack() as stack:
        source = _open_input(stack, args.input)
        sink = _open_output(stack, args.output)
        for _, text, err in _iter_transformed(source, op, config, args.jobs):
            if err is not None:
                raise _DataError(err)
            sink.write(text + "\n")
    return 0


def _cmd_scan(args) -> int:
    config = _scan_config(args)
    with ExitStack() as stack:
        source = _open_input(stack, args.input)
        sink = _open_output(stack, args.output)
        for line_no, raw in enumerate(source, start=1):
            line = raw.rstrip("\r\n")
            try:
                spans = scan(line, config)
            except PdsError as exc:
                raise _DataError(f"line {line_no}: {exc}")
            for span in spans:
                record = {
                    "line": line_no,
                    "start": span.start,
                    "end": span.end,
                    "raw": span.raw,
                    "digits": span.digits,
                    "kind": span.kind.value,
                }
                sink.write(json.dumps(record, ensure_ascii=False) + "\n")
    return 0


def _cmd_prep_corpus(args) -> int:
    config = _scan_config(args)
    train_sizes = tuple(int(s) for s in args.train_sizes.split(",") if s)
    spec = SplitSpec(
        seed=args.seed,
        heldout_size=args.heldout_size,
        per_class_size=args.per_class_size,
        train_sizes=train_sizes,
    )
    with ExitStack() as stack:
        source = _open_input(stack, args.input)
        try:
            sentences = list(parse_kestrel_stream(source, lenient=args.lenient))
            split = split_corpus(sentences, spec)
            manifest = write_split(split, args.out_dir, args.pds == "on", config)
        except PdsError as exc:
            raise _DataError(str(exc))
    print(json.dumps(manifest, indent=2))
    return 0


def _cmd_gen_synth(args) -> int:
    config = _scan_config(args)
    try:
        lo, hi = (int(part) for part in args.magnitude_range.split(":"))
    except ValueError:
        raise _UsageError("--magnitude-range must look like LO:HI")
    try:
        records = generate_synthetic_cardinal_set(args.count, (lo, hi), args.seed)
    except PdsError as exc:
        raise _DataError(str(exc))
    prefix = args.out
    with atomic_write(prefix + ".src") as src, atomic_write(
        prefix + ".tgt"
    ) as tgt, atomic_write(prefix + ".jsonl") as sidecar:
        for rec in records:
            source = rec.source
            if args.pds == "on":
                source = pretokenize_text(source, config)
            src.write(source + "\n")
            tgt.write(rec.target + "\n")
            sidecar.write(
                json.dumps(
                    {"value": rec.value, "magnitude": rec.magnitude, "template_id": rec.template_id}
                )
                + "\n"
            )
    return 0


def _cmd_gen_arith(args) -> int:
    scan_config = _scan_config(args)
    try:
        config = ArithConfig(
            min_ops=args.min_ops,
            max_ops=args.max_ops,
            operand_bound=args.operand_bound,
            operators=tuple(args.operators),
            seed=args.seed,
        )
    except ValueError as exc:
        raise _UsageError(str(exc))
    records = generate_records(args.count, config)
    pds_on = args.pds == "on"
    if args.format == "text":
        if not args.out:
            raise _UsageError("--format text needs --out PREFIX for the .src/.tgt pair")
        prefix = args.out
        with atomic_write(prefix + ".src") as src, atomic_write(
            prefix + ".tgt"
        ) as tgt:
            for rec in records:
                source, target = render_record(rec, pds_on, scan_config)
                src.write(source + "\n")
                tgt.write(target + "\n")
        return 0
    with ExitStack() as stack:
        sink = _open_output(stack, args.output)
        for rec in records:
            if args.format == "eqn":
                sink.write(render_eqn(rec, pds_on, scan_config) + "\n")
            else:
                source, target = render_record(rec, pds_on, scan_config)
                sink.write(
                    json.dumps(
                        {
                            "expression": rec.expression,
                            "value": str(rec.value),
                            "source": source,
                            "target": target,
                        }
                    )
                    + "\n"
                )
    return 0


def _read_lines(path: str) -> list[str]:
    with open(path, encoding="utf-8") as handle:
        return [line.rstrip("\r\n") for line in handle]


def _format_report_table(report) -> str:
    lines = [
        f"items            {report['n_items']}",
        f"overall accuracy {report['overall_accuracy']:.4f}",
        f"sentence error   {report['sentence_error_rate']:.4f}",
    ]
    if report["per_class"]:
        lines.append("per-class accuracy:")
        for cls, acc in report["per_class"].items():
            lines.append(f"  {cls:<12} {acc:.4f}")
    if report["macro_average"] is not None:
        lines.append(f"macro average    {report['macro_average']:.4f}")
    if report["magnitude_buckets"]:
        lines.append("magnitude buckets:")
        for bucket, acc in report["magnitude_buckets"].items():
            lines.append(f"  {bucket:<12} {acc:.4f}")
    lines.append("error buckets:")
    for bucket, count in report["error_counts"].items():
        lines.append(f"  {bucket:<12} {count}")
    return "\n".join(lines)


def _cmd_eval(args) -> int:
    gold = _read_lines(args.gold)
    pred = _read_lines(args.pred)
    if len(gold) != len(pred):
        raise _DataError(f"gold has {len(gold)} lines, predictions {len(pred)}")
    sidecar = [{} for _ in gold]
    if args.sidecar:
        raw = _read_lines(args.sidecar)
        if len(raw) != len(gold):
            raise _DataError(f"sidecar has {len(raw)} lines, gold {len(gold)}")
        try:
            sidecar = [json.loads(line) if line else {} for line in raw]
        except json.JSONDecodeError as exc:
            raise _DataError(f"sidecar: {exc}")
    sources = _read_lines(args.src) if args.src else None
    items = []
    for idx, (g, p) in enumerate(zip(gold, pred)):
        meta = sidecar[idx]
        magnitude = meta.get("magnitude")
        if magnitude is None and sources is not None:
            magnitude = sentence_magnitude(sources[idx])
        try:
            items.append(
                EvalItem(
                    gold=g,
                    predicted=p,
                    semiotic_class=meta.get("class"),
                    magnitude=magnitude,
                    class_match=meta.get("class_match"),
                )
            )
        except ValueError as exc:
            raise _DataError(f"line {idx + 1}: {exc}")
    include = (
        [c.strip() for c in args.include_classes.split(",") if c.strip()]
        if args.include_classes
        else None
    )
    try:
        report = build_report(items, include)
    except PdsError as exc:
        raise _DataError(str(exc))
    payload = report.to_dict()
    if args.json_out:
        with atomic_write(args.json_out) as handle:
            json.dump(payload, handle, indent=2)
            handle.write("\n")
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(_format_report_table(payload))
    return 0


def _cmd_verbalize(args) -> int:
    style = VerbalizationStyle(args.style)
    try:
        if style is VerbalizationStyle.CARDINAL:
            print(verbalize_cardinal(int(args.value)))
        elif style is VerbalizationStyle.DIGIT_WISE:
            print(verbalize_digits(args.value))
        elif style is VerbalizationStyle.DECIMAL:
            sep = args.decimal_sep or "."
            int_part, _, frac_part = args.value.partition(sep)
            print(verbalize_decimal(int_part, frac_part))
        else:
            hh, _, mm = args.value.partition(":")
            print(verbalize_time(int(hh), int(mm)))
    except ValueError:
        raise _UsageError(f"cannot parse {args.value!r} as style {args.style}")
    return 0


def _cmd_census(args) -> int:
    config = _scan_config(args)
    with ExitStack() as stack:
        source = _open_input(stack, args.input)
        lines = (line.rstrip("\r\n") for line in source)
        try:
            report = vocabulary_census(lines, args.census_mode, config.pds)
        except PdsError as exc:
            raise _DataError(str(exc))
    payload = report.to_dict()
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for key, value in payload.items():
            print(f"{key} {value}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="pdskit", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_encode = sub.add_parser("encode", help="rewrite numbers in text lines as token streams")
    p_decode = sub.add_parser("decode", help="restore digits from token streams in text lines")
    for p in (p_encode, p_decode):
        _add_scan_flags(p)
        _add_io_flags(p)
        p.add_argument("--jobs", type=int, default=1, help="parallel line workers, ordered output")

    p_scan = sub.add_parser("scan", help="emit located number spans as JSONL")
    _add_scan_flags(p_scan)
    _add_io_flags(p_scan)

    p_prep = sub.add_parser("prep-corpus", help="parse, split, and emit a TSV corpus")
    _add_scan_flags(p_prep)
    p_prep.add_argument("-i", "--input", default=None, metavar="FILE")
    p_prep.add_argument("--out-dir", required=True)
    p_prep.add_argument("--seed", type=int, required=True)
    p_prep.add_argument("--heldout-size", type=int, default=10_000)
    p_prep.add_argument("--per-class-size", type=int, default=1_000)
    p_prep.add_argument("--train-sizes", default="100000,1000000,10000000")
    p_prep.add_argument("--pds", choices=["on", "off"], default="off")
    p_prep.add_argument("--lenient", action="store_true", help="skip malformed lines")

    p_synth = sub.add_parser("gen-synth", help="generate synthetic cardinal sentence pairs")
    _add_scan_flags(p_synth)
    p_synth.add_argument("--count", type=int, required=True)
    p_synth.add_argument("--seed", type=int, required=True)
    p_synth.add_argument("--magnitude-range", default="0:12", metavar="LO:HI")
    p_synth.add_argument("--out", required=True, metavar="PREFIX")
    p_synth.add_argument("--pds", choices=["on", "off"], default="off")

    p_arith = sub.add_parser("gen-arith", help="generate arithmetic equation datasets")
    _add_scan_flags(p_arith)
    _add_io_flags(p_arith)
    p_arith.add_argument("--count", type=int, required=True)
    p_arith.add_argument("--seed", type=int, required=True)
    p_arith.add_argument("--min-ops", type=int, default=2)
    p_arith.add_argument("--max-ops", type=int, default=5)
    p_arith.add_argument("--operand-bound", type=int, default=10**10)
    p_arith.add_argument("--operators", default="+-*")
    p_arith.add_argument("--pds", choices=["on", "off"], default="off")
    p_arith.add_argument("--format", choices=["text", "jsonl", "eqn"], default="eqn")
    p_arith.add_argument("--out", default=None, metavar="PREFIX")

    p_eval = sub.add_parser("eval", help="score predictions against gold targets")
    p_eval.add_argument("--pred", required=True, metavar="FILE")
    p_eval.add_argument("--gold", required=True, metavar="FILE")
    p_eval.add_argument("--src", default=None, metavar="FILE",
                        help="plain (pre-rewrite) source lines for magnitude bucketing")
    p_eval.add_argument("--sidecar", default=None, metavar="FILE",
                        help="JSONL with per-line {class, class_match, magnitude}")
    p_eval.add_argument("--include-classes", default=None, metavar="CSV")
    p_eval.add_argument("--format", choices=["text", "json"], default="text")
    p_eval.add_argument("--json-out", default=None, metavar="FILE")

    p_verb = sub.add_parser("verbalize", help="verbalize a single value")
    p_verb.add_argument(
        "--style", choices=[s.value for s in VerbalizationStyle], required=True
    )
    p_verb.add_argument("--decimal-sep", default=".", metavar="CHAR")
    p_verb.add_argument("value")

    p_census = sub.add_parser("census", help="vocabulary statistics over input lines")
    _add_scan_flags(p_census)
    _add_io_flags(p_census)
    p_census.add_argument("--census-mode", choices=["raw", "pds"], required=True)
    p_census.add_argument("--format", choices=["text", "json"], default="text")

    return parser


_HANDLERS = {
    "encode": lambda args: _cmd_codec(args, "encode"),
    "decode": lambda args: _cmd_codec(args, "decode"),
    "scan": _cmd_scan,
    "prep-corpus": _cmd_prep_corpus,
    "gen-synth": _cmd_gen_synth,
    "gen-arith": _cmd_gen_arith,
    "eval": _cmd_eval,
    "verbalize": _cmd_verbalize,
    "census": _cmd_census,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except _UsageError as exc:
        print(f"pdskit {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except _DataError as exc:
        print(f"pdskit {args.command}: {exc}", file=sys.stderr)
        return 2
    except PdsError as exc:
        print(f"pdskit {args.command}: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0
    except OSError as exc:
        print(f"pdskit {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
