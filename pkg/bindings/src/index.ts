/**
 * Bindings over the pdskit command line, which is the stable wire surface
 * of the library: UTF-8 lines in, UTF-8 lines out. Every function here is
 * a pure call into that surface; no behavior lives only on this side.
 *
 * Errors raised by the library cross the boundary as `Error` objects whose
 * `name` is the library's error code (e.g. "OversizeNumber",
 * "PlaceValueGap").
 */

import { spawnSync } from "node:child_process";

export const VERSION = "0.1.0";

export interface PdsOptions {
  /** "minimal" (default) or "grouped" thousands-separator merging. */
  mode?: "minimal" | "grouped";
  thousandsSep?: string;
  decimalSep?: string;
  /** Longest encodable digit run; defaults to 20. */
  maxDigits?: number;
  boundaryToken?: string;
  /** "pass" leaves oversize runs untouched, "error" rejects them. */
  oversize?: "pass" | "error";
}

export interface NumberSpan {
  line: number;
  start: number;
  end: number;
  raw: string;
  digits: string;
  kind: "Integer" | "GroupedInteger";
}

const ERROR_CODES = [
  "EmptyInput",
  "TooManyDigits",
  "NonDigit",
  "MalformedStream",
  "PlaceValueGap",
  "OversizeNumber",
  "MalformedLine",
  "InsufficientData",
  "OutOfRange",
  "Unsupported",
  "ParseError",
  "LengthMismatch",
  "EmptyEvaluation",
  "MissingClass",
  "MissingMagnitude",
];

function pythonBin(): string {
  return process.env.PDSKIT_PYTHON ?? "python3";
}

function codedError(code: string, message: string): Error {
  const err = new Error(message);
  err.name = code;
  return err;
}

function cliFlags(options: PdsOptions): string[] {
  const flags: string[] = [];
  if (options.mode !== undefined) flags.push("--mode", options.mode);
  if (options.thousandsSep !== undefined) flags.push("--thousands-sep", options.thousandsSep);
  if (options.decimalSep !== undefined) flags.push("--decimal-sep", options.decimalSep);
  if (options.maxDigits !== undefined) flags.push("--max-digits", String(options.maxDigits));
  if (options.boundaryToken !== undefined) flags.push("--boundary-token", options.boundaryToken);
  if (options.oversize !== undefined) flags.push("--oversize", options.oversize);
  return flags;
}

function runCli(subcommand: string, input: string, options: PdsOptions): string {
  const args = ["-m", "pdskit", subcommand, ...cliFlags(options)];
  const result = spawnSync(pythonBin(), args, {
    input,
    encoding: "utf8",
    maxBuffer: 1 << 28,
  });
  if (result.error) throw result.error;
  if (result.status !== 0) {
    const stderr = (result.stderr ?? "").trim();
    const match = ERROR_CODES.find((code) => stderr.includes(code));
    throw codedError(match ?? "PdsError", stderr || `pdskit exited ${result.status}`);
  }
  return result.stdout;
}

/** Run one line-oriented subcommand, preserving the text's own line shape. */
function runLines(subcommand: string, text: string, options: PdsOptions): string {
  if (text === "") return "";
  const hadTrailingNewline = text.endsWith("\n");
  const stdout = runCli(subcommand, hadTrailingNewline ? text : text + "\n", options);
  return hadTrailingNewline ? stdout : stdout.replace(/\n$/, "");
}

/** Rewrite every number in the text as its boundary-delimited token stream. */
export function encodeText(text: string, options: PdsOptions = {}): string {
  return runLines("encode", text, options);
}

/** Replace every well-formed token group in the text with its digits. */
export function decodeText(text: string, options: PdsOptions = {}): string {
  return runLines("decode", text, options);
}

/** Locate numeric spans; offsets are per line, lines numbered from 1. */
export function scan(text: string, options: PdsOptions = {}): NumberSpan[] {
  const stdout = runLines("scan", text, options);
  if (stdout === "") return [];
  return stdout
    .split("\n")
    .filter((line) => line.length > 0)
    .map((line) => JSON.parse(line) as NumberSpan);
}

/** Encode one digit string to its rendered token group. */
export function encodeDigits(digits: string, options: PdsOptions = {}): string {
  if (digits === "") throw codedError("EmptyInput", "no digits to encode");
  if (!/^[0-9]+$/.test(digits)) {
    throw codedError("NonDigit", `non-digit character in ${JSON.stringify(digits)}`);
  }
  const maxDigits = options.maxDigits ?? 20;
  if (digits.length > maxDigits) {
    throw codedError("TooManyDigits", `${digits.length} digits exceeds max_digits=${maxDigits}`);
  }
  return encodeText(digits, options);
}

/** Decode one rendered token group back to its digit string. */
export function decodeTokens(stream: string, options: PdsOptions = {}): string {
  const decoded = decodeText(stream, options);
  if (!/^[0-9]+$/.test(decoded)) {
    throw codedError(
      "MalformedStream",
      `stream is not a single well-formed token group: ${JSON.stringify(stream)}`,
    );
  }
  return decoded;
}

/** Version reported by the underlying library; must equal VERSION. */
export function libraryVersion(): string {
  const result = spawnSync(pythonBin(), ["-m", "pdskit", "--version"], { encoding: "utf8" });
  if (result.error) throw result.error;
  if (result.status !== 0) throw codedError("PdsError", (result.stderr ?? "").trim());
  return result.stdout.trim();
}
