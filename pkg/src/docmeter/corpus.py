"""Walk project trees, select source files, and run extraction plus scoring.

File-level work is independent and may run in parallel; results are merged
and sorted so that identical trees always produce identical output.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .extract import ParseFailure, extract_file, signature_word_set
from .score import ScoreRecord, doc_word_bag, docstring_fingerprint, score_function
from .tokenizer import DEFAULT_STOP_WORDS

DEFAULT_EXCLUDE_MARKERS = ("test", "e2e")


class ConfigError(Exception):
    """Bad configuration: missing or unreadable roots, malformed settings."""


@dataclass
class CorpusConfig:
    roots: tuple[Path, ...]
    exclude_markers: tuple[str, ...] = DEFAULT_EXCLUDE_MARKERS
    file_extension: str = ".py"
    stop_words: frozenset[str] = DEFAULT_STOP_WORDS
    follow_symlinks: bool = False

    def __post_init__(self):
        if not self.roots:
            raise ConfigError("at least one root directory is required")
        self.roots = tuple(Path(r) for r in self.roots)
        self.exclude_markers = tuple(m.lower() for m in self.exclude_markers)


@dataclass(frozen=True)
class SourceFile:
    """A selected file: where it lives and its root-relative (posix) path."""

    absolute: Path
    relative: str


@dataclass
class FileStats:
    """Function counts for one parsed file."""

    file: str
    total_functions: int
    total_empty: int

    @property
    def empty_percent(self) -> Fraction | None:
        """Undocumented fraction; None for files without functions."""
        if self.total_functions == 0:
            return None
        return Fraction(self.total_empty, self.total_functions)


def select_files(cfg: CorpusConfig) -> list[SourceFile]:
    """Deterministically select analyzable files under the configured roots.

    A file qualifies when its name ends with the configured extension and
    its root-relative path contains no exclude marker as a case-insensitive
    substring.  Symlinks are skipped unless follow_symlinks is set.  The
    result is sorted by relative path (root order breaks ties).
    """
    picked: list[tuple[str, int, Path]] = []
    for index, root in enumerate(cfg.roots):
        if not root.is_dir():
            raise ConfigError(f"root is not a directory: {root}")
        try:
            os.listdir(root)
        except OSError as exc:
            raise ConfigError(f"root is not readable: {root} ({exc})") from exc
        for dirpath, dirnames, filenames in os.walk(
            root, followlinks=cfg.follow_symlinks
        ):
            dirnames.sort()
            for name in sorted(filenames):
                if not name.endswith(cfg.file_extension):
                    continue
                path = Path(dirpath) / name
                if not cfg.follow_symlinks and path.is_symlink():
                    continue
                rel = path.relative_to(root).as_posix()
                lowered = rel.lower()
                if any(marker in lowered for marker in cfg.exclude_markers):
                    continue
                picked.append((rel, index, path))
    picked.sort(key=lambda item: (item[0], item[1]))
    return [SourceFile(absolute=path, relative=rel) for rel, _, path in picked]


@dataclass
class _FileOutcome:
    stats: FileStats | None
    records: list[ScoreRecord]
    failure: ParseFailure | None


def scan_file(source: SourceFile, stop_words: frozenset[str]) -> _FileOutcome:
    result = extract_file(source.absolute, source.relative)
    if isinstance(result, ParseFailure):
        return _FileOutcome(stats=None, records=[], failure=result)
    records: list[ScoreRecord] = []
    documented = 0
    for rec in result:
        if not rec.is_documented:
            continue
        documented += 1
        scored = score_function(
            doc_word_bag(rec.docstring, stop_words),
            signature_word_set(rec),
            stop_words,
            file=rec.file,
            line=rec.line,
            function=rec.name,
        )
        scored.doc_fingerprint = docstring_fingerprint(rec.docstring)
        records.append(scored)
    stats = FileStats(
        file=source.relative,
        total_functions=len(result),
        total_empty=len(result) - documented,
    )
    return _FileOutcome(stats=stats, records=records, failure=None)


def scan_corpus(
    cfg: CorpusConfig, jobs: int | None = None
) -> tuple[list[ScoreRecord], list[FileStats], list[ParseFailure]]:
    """Scan every selected file; failures are collected, never fatal.

    Returns (score records, per-file stats, parse failures), each sorted so
    the output is identical for identical trees regardless of parallelism.
    jobs=None uses the available CPU count; jobs=1 runs fully serial.
    """
    files = select_files(cfg)
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs <= 1 or len(files) <= 1:
        outcomes = [scan_file(f, cfg.stop_words) for f in files]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(lambda f: scan_file(f, cfg.stop_words), files))

    records: list[ScoreRecord] = []
    stats: list[FileStats] = []
    failures: list[ParseFailure] = []
    for outcome in outcomes:
        if outcome.failure is not None:
            failures.append(outcome.failure)
        if outcome.stats is not None:
            stats.append(outcome.stats)
        records.extend(outcome.records)
    records.sort(key=lambda r: (r.file, r.line))
    stats.sort(key=lambda s: s.file)
    failures.sort(key=lambda f: f.file)
    return records, stats, failures
