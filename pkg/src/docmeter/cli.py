"""Command-line interface: scan corpora, probe single functions, explain the metric."""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .corpus import (
    ConfigError,
    CorpusConfig,
    DEFAULT_EXCLUDE_MARKERS,
    FileStats,
    scan_corpus,
)
from .extract import ParseFailure, extract_file, signature_word_set
from .report import (
    NoDataError,
    build_report,
    emit_reports,
    format_fixed6,
    render_summary,
)
from .score import ScoreRecord, classify_word, doc_word_bag, score_function
from .tokenizer import DEFAULT_STOP_WORDS, load_stop_words

CONFIG_ENV_VAR = "DOCMETER_CONFIG"
DEFAULT_CONFIG_NAME = "docmeter.conf"
DEFAULT_OUT_DIR = "docmeter-out"

_CONFIG_KEYS = {
    "exclude",
    "extension",
    "stop_words",
    "jobs",
    "max_failure_rate",
    "follow_symlinks",
    "out",
}

EXPLAIN_TEXT = """\
the meaningless score
=====================
For every documented function:

 1. take the function signature (name, parameter names, parameter type
    annotations, return annotation) and the docstring;
 2. split both into words: every run of non-alphanumeric characters
    separates words, snake_case and camelCase identifiers are split into
    their parts, and everything is lowercased;
 3. keep the docstring words that are longer than one character and are
    not stop words; repetitions are kept.  The signature words form a
    deduplicated set;
 4. a docstring word is meaningless when it appears in the signature set,
    or when some signature word (itself longer than one character and not
    a stop word) is a contiguous substring of it, e.g. 'info' in the
    signature makes 'information' in the docstring meaningless;
 5. score = meaningless words / meaningful words.  1.0 means the
    docstring only restates the signature; 0.0 means every word adds
    vocabulary.  A docstring with no meaningful words has no score and is
    reported separately.
"""


@dataclass
class Settings:
    exclude: tuple[str, ...]
    extension: str
    stop_words: frozenset[str]
    stop_source: str
    jobs: int | None
    max_failure_rate: Fraction
    follow_symlinks: bool
    out: str | None


def parse_config_file(path: str | Path) -> dict[str, str]:
    """Parse a `key = value` config file; '#' starts a comment."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    settings: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        key, sep, value = body.partition("=")
        if not sep:
            raise ConfigError(f"{path}:{lineno}: expected `key = value`")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        settings[key] = value.strip()
    return settings


def _parse_bool(value: str, origin: str) -> bool:
    lowered = value.lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{origin}: not a boolean: {value!r}")


def resolve_settings(args: argparse.Namespace) -> Settings:
    """Layer configuration: flags > config file > defaults."""
    config_path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV_VAR)
    if config_path:
        file_settings = parse_config_file(config_path)
    elif Path(DEFAULT_CONFIG_NAME).is_file():
        file_settings = parse_config_file(DEFAULT_CONFIG_NAME)
    else:
        file_settings = {}

    exclude = getattr(args, "exclude", None)
    if not exclude:
        if "exclude" in file_settings:
            exclude = [
                m.strip() for m in file_settings["exclude"].split(",") if m.strip()
            ]
        else:
            exclude = list(DEFAULT_EXCLUDE_MARKERS)

    extension = getattr(args, "extension", None) or file_settings.get(
        "extension", ".py"
    )

    stop_path = getattr(args, "stop_words", None) or file_settings.get("stop_words")
    if stop_path:
        try:
            stop_words = load_stop_words(stop_path)
        except OSError as exc:
            raise ConfigError(f"cannot read stop-word file: {exc}") from exc
        stop_source = str(stop_path)
    else:
        stop_words = DEFAULT_STOP_WORDS
        stop_source = "built-in default"

    jobs = getattr(args, "jobs", None)
    if jobs is None and "jobs" in file_settings:
        try:
            jobs = int(file_settings["jobs"])
        except ValueError as exc:
            raise ConfigError(f"jobs: not an integer: {file_settings['jobs']!r}") from exc

    rate = getattr(args, "max_failure_rate", None)
    if rate is None:
        rate = file_settings.get("max_failure_rate", "1.0")
    try:
        max_failure_rate = Fraction(str(rate))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"max-failure-rate: not a number: {rate!r}") from exc
    if not 0 <= max_failure_rate <= 1:
        raise ConfigError("max-failure-rate must lie in [0, 1]")

    follow = getattr(args, "follow_symlinks", None)
    if follow is None:
        follow = (
            _parse_bool(file_settings["follow_symlinks"], "follow_symlinks")
            if "follow_symlinks" in file_settings
            else False
        )

    out = getattr(args, "out", None) or file_settings.get("out")

    return Settings(
        exclude=tuple(m.lower() for m in exclude),
        extension=extension,
        stop_words=stop_words,
        stop_source=stop_source,
        jobs=jobs,
        max_failure_rate=max_failure_rate,
        follow_symlinks=bool(follow),
        out=out,
    )


def cmd_scan(args: argparse.Namespace) -> int:
    settings = resolve_settings(args)
    started = time.perf_counter()
    cfg = CorpusConfig(
        roots=tuple(Path(r) for r in args.roots),
        exclude_markers=settings.exclude,
        file_extension=settings.extension,
        stop_words=settings.stop_words,
        follow_symlinks=settings.follow_symlinks,
    )
    records, stats, failures = scan_corpus(cfg, jobs=settings.jobs)
    report = build_report(records, stats, failures)
    out_dir = settings.out or DEFAULT_OUT_DIR
    emit_reports(report, out_dir, plots=args.plots)
    sys.stdout.write(render_summary(report))
    print(f"reports written to {out_dir}")
    if not args.deterministic:
        print(f"elapsed: {time.perf_counter() - started:.3f}s")
    selected = len(stats) + len(failures)
    if selected and Fraction(len(failures), selected) > settings.max_failure_rate:
        print(
            f"error: failure rate {len(failures)}/{selected} exceeds "
            f"--max-failure-rate {float(settings.max_failure_rate):g}",
            file=sys.stderr,
        )
        return 1
    return 0


def _find_function(records, wanted: str):
    if wanted.isdigit():
        line = int(wanted)
        for rec in records:
            if rec.line == line:
                return rec
        return None
    for rec in records:
        if rec.name == wanted:
            return rec
    return None


def cmd_score_one(args: argparse.Namespace) -> int:
    settings = resolve_settings(args)
    path = Path(args.file)
    if not path.is_file():
        print(f"error: no such file: {path}", file=sys.stderr)
        return 2
    result = extract_file(path, path.name)
    if isinstance(result, ParseFailure):
        print(f"error: cannot analyze {path}: {result.reason}", file=sys.stderr)
        return 2
    rec = _find_function(result, args.function)
    if rec is None:
        print(f"error: function {args.function!r} not found in {path}", file=sys.stderr)
        return 2
    if not rec.is_documented:
        print(f"{rec.file}:{rec.line} {rec.name}: no docstring")
        return 0
    sig = signature_word_set(rec)
    bag = doc_word_bag(rec.docstring, settings.stop_words)
    scored = score_function(
        bag, sig, settings.stop_words, file=rec.file, line=rec.line, function=rec.name
    )
    print(f"{scored.file}:{scored.line} {scored.function}")
    print(f"  total words:       {scored.total_words}")
    print(f"  meaningful words:  {scored.meaningful_words}")
    print(f"  meaningless words: {scored.meaningless_words}")
    if scored.meaningless is None:
        print("  meaningless score: undefined (no meaningful words)")
    else:
        print(
            f"  meaningless score: {format_fixed6(scored.meaningless)} "
            f"({scored.meaningless_words}/{scored.meaningful_words})"
        )
    print(f"  signature words:   {', '.join(sorted(sig)) if sig else '(none)'}")
    if bag.words:
        print("  docstring words:")
        for word in bag.words:
            verdict, reason = classify_word(word, sig, settings.stop_words)
            print(f"    {word:<18} {verdict:<12} {reason}")
    return 0


def cmd_explain(args: argparse.Namespace) -> int:
    settings = resolve_settings(args)
    sys.stdout.write(EXPLAIN_TEXT)
    print()
    print("effective configuration")
    stop_words = ", ".join(sorted(settings.stop_words))
    print(f"  stop words ({len(settings.stop_words)}, from {settings.stop_source}):")
    print(f"    {stop_words}")
    print(f"  exclude markers: {', '.join(sorted(settings.exclude))}")
    print(f"  file extension: {settings.extension}")
    return 0


def _load_previous(out_dir: Path):
    """Rebuild scan output from a previous report directory."""

    def read_rows(name: str) -> list[dict[str, str]]:
        path = out_dir / name
        if not path.is_file():
            raise ConfigError(f"missing report file: {path}")
        with open(path, newline="", encoding="utf-8") as handle:
            return list(csv.DictReader(handle))

    records = []
    for row in read_rows("functions.csv"):
        score = row["meaningless"]
        records.append(
            ScoreRecord(
                file=row["file"],
                line=int(row["line"]),
                function=row["function"],
                total_words=int(row["total_words"]),
                meaningful_words=int(row["meaningful_words"]),
                meaningless_words=int(row["meaningless_words"]),
                meaningless=Fraction(score) if score else None,
            )
        )
    stats = [
        FileStats(
            file=row["file"],
            total_functions=int(row["total_functions"]),
            total_empty=int(row["total_empty"]),
        )
        for row in read_rows("files.csv")
    ]
    failures = [
        ParseFailure(file=row["file"], reason=row["reason"])
        for row in read_rows("failures.csv")
    ]
    return records, stats, failures


def cmd_report(args: argparse.Namespace) -> int:
    records, stats, failures = _load_previous(Path(args.source))
    report = build_report(records, stats, failures)
    out_dir = args.out or args.source
    emit_reports(report, out_dir, plots=args.plots)
    sys.stdout.write(render_summary(report))
    print(f"reports written to {out_dir}")
    return 0


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--config", metavar="FILE", help="configuration file (key = value lines)"
    )
    parser.add_argument(
        "--stop-words",
        dest="stop_words",
        metavar="FILE",
        help="stop-word list, one word per line",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="docmeter",
        description="Measure how much function docstrings repeat the signature.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    scan = sub.add_parser("scan", help="scan project trees and write reports")
    scan.add_argument("roots", nargs="+", metavar="ROOT", help="directories to scan")
    scan.add_argument("--out", "-o", metavar="DIR", help="report output directory")
    scan.add_argument(
        "--exclude",
        action="append",
        metavar="MARKER",
        help="path substring to exclude (repeatable; replaces the default test/e2e)",
    )
    scan.add_argument("--extension", metavar="EXT", help="source extension (default .py)")
    scan.add_argument(
        "--max-failure-rate",
        dest="max_failure_rate",
        metavar="RATE",
        help="exit 1 when the parse-failure share exceeds RATE (default 1.0)",
    )
    scan.add_argument("--jobs", type=int, metavar="N", help="parallel workers (1 = serial)")
    scan.add_argument(
        "--follow-symlinks",
        dest="follow_symlinks",
        action="store_const",
        const=True,
        help="follow symbolic links while walking",
    )
    scan.add_argument("--plots", action="store_true", help="also emit SVG CDF plots")
    scan.add_argument(
        "--deterministic",
        action="store_true",
        help="suppress timing lines for reproducible stdout",
    )
    _add_config_flags(scan)
    scan.set_defaults(handler=cmd_scan)

    one = sub.add_parser("score-one", help="score a single function with a word trace")
    one.add_argument("file", help="source file to inspect")
    one.add_argument("function", help="function name or 1-based line number")
    _add_config_flags(one)
    one.set_defaults(handler=cmd_score_one)

    rep = sub.add_parser("report", help="recompute reports from a previous scan")
    rep.add_argument("source", metavar="DIR", help="directory holding a previous scan")
    rep.add_argument("--out", "-o", metavar="DIR", help="output directory (default: DIR)")
    rep.add_argument("--plots", action="store_true", help="also emit SVG CDF plots")
    _add_config_flags(rep)
    rep.set_defaults(handler=cmd_report)

    explain = sub.add_parser("explain", help="print the metric and effective config")
    explain.add_argument(
        "--exclude", action="append", metavar="MARKER", help="path substring to exclude"
    )
    explain.add_argument("--extension", metavar="EXT", help="source extension")
    _add_config_flags(explain)
    explain.set_defaults(handler=cmd_explain)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (ConfigError, NoDataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
