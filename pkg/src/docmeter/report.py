"""Aggregate scan results into distributions, summary statistics, and report files.

Emitted files (all deterministic, written atomically):

  functions.csv  one row per documented function with its word counts and score
  files.csv      one row per parsed file with its undocumented fraction
  failures.csv   one row per file that could not be analyzed
  cdf_pooled.csv / cdf_<project>.csv   empirical score distributions
  summary.txt    human-readable totals
  cdf_*.svg      optional line renderings of the CDFs
"""

from __future__ import annotations

import csv
import io
import math
import os
import tempfile
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .corpus import FileStats
from .extract import ParseFailure
from .score import ScoreRecord

FUNCTIONS_HEADER = [
    "file",
    "line",
    "function",
    "total_words",
    "meaningful_words",
    "meaningless_words",
    "meaningless",
    "flag",
]
FILES_HEADER = ["file", "total_functions", "total_empty", "empty_percent"]
CDF_HEADER = ["score", "cumulative_fraction"]
FAILURES_HEADER = ["file", "reason"]
NO_MEANINGFUL_FLAG = "no_meaningful_words"

DEFAULT_DUPLICATE_THRESHOLD = Fraction(1, 2)
DEFAULT_ZERO_THRESHOLD = Fraction(3, 10)


class NoDataError(ValueError):
    """A statistic was requested over an empty distribution."""


@dataclass(frozen=True)
class Cdf:
    """Empirical CDF: one (score, cumulative fraction) point per distinct score."""

    points: tuple[tuple[Fraction, Fraction], ...]
    sample_count: int


@dataclass
class CorpusReport:
    records: list[ScoreRecord]
    file_stats: list[FileStats]
    failures: list[ParseFailure]
    per_project_cdfs: dict[str, Cdf]
    pooled_cdf: Cdf
    avg_undocumented_fraction: Fraction | None
    undefined_score_count: int
    # project -> (largest identical-docstring group, documented functions);
    # a zero group size means docstring identity was not available
    duplicate_stats: dict[str, tuple[int, int]]


def project_of(file: str) -> str:
    """Project identity: top-level directory of the root-relative path.

    Files sitting directly under a scan root are grouped as "root".
    """
    head, sep, _ = file.partition("/")
    return head if sep else "root"


def _as_fraction(value) -> Fraction:
    # floats are taken at their decimal face value: 0.8 means exactly 4/5
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


def avg_undocumented(stats: list[FileStats]) -> Fraction:
    """Unweighted mean of per-file undocumented fractions.

    Files without functions have no fraction and are skipped; if nothing
    remains this raises NoDataError rather than inventing a zero.
    """
    fractions = [s.empty_percent for s in stats if s.empty_percent is not None]
    if not fractions:
        raise NoDataError("no file has a defined undocumented fraction")
    return sum(fractions, Fraction(0)) / len(fractions)


def compute_cdf(scores) -> Cdf:
    """Empirical CDF of the given scores (each must lie in [0, 1])."""
    ordered = sorted(_as_fraction(s) for s in scores)
    if ordered and not (0 <= ordered[0] and ordered[-1] <= 1):
        raise ValueError("scores must lie in [0, 1]")
    n = len(ordered)
    points = []
    for i, score in enumerate(ordered):
        if i + 1 == n or ordered[i + 1] != score:
            points.append((score, Fraction(i + 1, n)))
    return Cdf(points=tuple(points), sample_count=n)


def _quantile(cdf: Cdf, q: Fraction) -> Fraction:
    rank = min(max(math.ceil(q * cdf.sample_count), 1), cdf.sample_count)
    for score, cumulative in cdf.points:
        if cumulative * cdf.sample_count >= rank:
            return score
    return cdf.points[-1][0]


def central_band(cdf: Cdf, mass) -> tuple[Fraction, Fraction]:
    """Nearest-rank quantile pair enclosing the central `mass` of the CDF."""
    if cdf.sample_count == 0:
        raise NoDataError("empty distribution")
    mass = _as_fraction(mass)
    if not 0 < mass < 1:
        raise ValueError("mass must be strictly between 0 and 1")
    tail = (1 - mass) / 2
    return _quantile(cdf, tail), _quantile(cdf, 1 - tail)


def build_report(
    records: list[ScoreRecord],
    file_stats: list[FileStats],
    failures: list[ParseFailure],
) -> CorpusReport:
    """Group scan output by project and compute every summary statistic."""
    by_project: dict[str, list[ScoreRecord]] = {}
    for record in records:
        by_project.setdefault(project_of(record.file), []).append(record)

    per_project: dict[str, Cdf] = {}
    duplicate_stats: dict[str, tuple[int, int]] = {}
    for project in sorted(by_project):
        group = by_project[project]
        per_project[project] = compute_cdf(
            [r.meaningless for r in group if r.meaningless is not None]
        )
        fingerprints = Counter(r.doc_fingerprint for r in group if r.doc_fingerprint)
        top = max(fingerprints.values()) if fingerprints else 0
        duplicate_stats[project] = (top, len(group))

    try:
        average = avg_undocumented(file_stats)
    except NoDataError:
        average = None

    return CorpusReport(
        records=sorted(records, key=lambda r: (r.file, r.line)),
        file_stats=sorted(file_stats, key=lambda s: s.file),
        failures=sorted(failures, key=lambda f: f.file),
        per_project_cdfs=per_project,
        pooled_cdf=compute_cdf(
            [r.meaningless for r in records if r.meaningless is not None]
        ),
        avg_undocumented_fraction=average,
        undefined_score_count=sum(1 for r in records if r.meaningless is None),
        duplicate_stats=duplicate_stats,
    )


def flag_degenerate_projects(
    report: CorpusReport,
    duplicate_threshold=DEFAULT_DUPLICATE_THRESHOLD,
    zero_threshold=DEFAULT_ZERO_THRESHOLD,
) -> list[tuple[str, str]]:
    """Conservative screen for projects whose scores look auto-generated.

    Flags a project when a single identical docstring covers at least
    `duplicate_threshold` of its documented functions, or when at least
    `zero_threshold` of its defined scores are exactly zero.  Flagged
    projects deserve manual review, not automatic exclusion.
    """
    duplicate_threshold = _as_fraction(duplicate_threshold)
    zero_threshold = _as_fraction(zero_threshold)
    flagged = []
    for project in sorted(report.per_project_cdfs):
        reasons = []
        top, documented = report.duplicate_stats.get(project, (0, 0))
        if top and documented and Fraction(top, documented) >= duplicate_threshold:
            reasons.append(
                f"dominant duplicate docstring "
                f"({top}/{documented} documented functions share one docstring)"
            )
        cdf = report.per_project_cdfs[project]
        if cdf.sample_count and cdf.points[0][0] == 0:
            zero_fraction = cdf.points[0][1]
            if zero_fraction >= zero_threshold:
                zeros = int(zero_fraction * cdf.sample_count)
                reasons.append(
                    f"zero-score concentration "
                    f"({zeros}/{cdf.sample_count} scores are exactly 0)"
                )
        if reasons:
            flagged.append((project, "; ".join(reasons)))
    return flagged


def format_fixed6(value) -> str:
    """Render a non-negative rational with exactly 6 fractional digits,
    rounding halves to even."""
    frac = _as_fraction(value)
    scaled, remainder = divmod(frac.numerator * 10**6, frac.denominator)
    double = 2 * remainder
    if double > frac.denominator or (double == frac.denominator and scaled % 2):
        scaled += 1
    return f"{scaled // 10**6}.{scaled % 10**6:06d}"


def _format_percent(value: Fraction) -> str:
    return f"{float(value):.1f}%"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _atomic_write(path: Path, data: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _cdf_rows(cdf: Cdf):
    return [[format_fixed6(score), format_fixed6(cum)] for score, cum in cdf.points]


def _sanitize(project: str) -> str:
    clean = "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in project)
    return clean or "_"


def _project_filenames(projects, extension: str) -> list[tuple[str, str]]:
    # "pooled" is reserved for the pooled files
    used = {f"cdf_pooled{extension}"}
    named = []
    for project in sorted(projects):
        base = f"cdf_{_sanitize(project)}"
        name = base + extension
        serial = 2
        while name in used:
            name = f"{base}_{serial}{extension}"
            serial += 1
        used.add(name)
        named.append((project, name))
    return named


def render_summary(report: CorpusReport) -> str:
    selected = len(report.file_stats) + len(report.failures)
    failure_share = (
        Fraction(len(report.failures), selected) if selected else Fraction(0)
    )
    total_functions = sum(s.total_functions for s in report.file_stats)
    total_empty = sum(s.total_empty for s in report.file_stats)
    if report.avg_undocumented_fraction is None:
        average = "n/a (no files with functions)"
    else:
        average = format_fixed6(report.avg_undocumented_fraction)
    try:
        low, high = central_band(report.pooled_cdf, Fraction(4, 5))
        band = f"[{format_fixed6(low)}, {format_fixed6(high)}]"
    except NoDataError:
        band = "n/a (no scored functions)"

    lines = [
        "corpus scan summary",
        f"files selected: {selected}",
        f"files parsed: {len(report.file_stats)}",
        f"parse failures: {len(report.failures)} ({_format_percent(100 * failure_share)})",
        f"functions found: {total_functions}",
        f"functions documented: {total_functions - total_empty}",
        f"functions undocumented: {total_empty}",
        f"average undocumented fraction (per-file mean): {average}",
        f"documented functions with no meaningful words: {report.undefined_score_count}",
        f"scored functions: {report.pooled_cdf.sample_count}",
        f"central 80% of meaningless scores: {band}",
    ]
    flagged = flag_degenerate_projects(report)
    if flagged:
        lines.append("projects flagged for review:")
        lines.extend(f"  {project}: {reason}" for project, reason in flagged)
    else:
        lines.append("projects flagged for review: none")
    return "\n".join(lines) + "\n"


def render_cdf_svg(cdf: Cdf, title: str) -> str:
    """A small standalone step-line rendering of one CDF."""
    width, height = 480, 320
    left, right, top, bottom = 52, 16, 28, 40
    plot_w = width - left - right
    plot_h = height - top - bottom

    def x_at(score: Fraction) -> float:
        return left + float(score) * plot_w

    def y_at(fraction: Fraction) -> float:
        return top + (1 - float(fraction)) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{left + plot_w / 2:.1f}" y="16" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{title}</text>',
    ]
    for i in range(6):
        tick = Fraction(i, 5)
        x = x_at(tick)
        y = y_at(tick)
        parts.append(
            f'<line x1="{x:.1f}" y1="{top + plot_h}" x2="{x:.1f}" '
            f'y2="{top + plot_h + 4}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x:.1f}" y="{top + plot_h + 16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{float(tick):.1f}</text>'
        )
        parts.append(
            f'<line x1="{left - 4}" y1="{y:.1f}" x2="{left}" y2="{y:.1f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{left - 7}" y="{y + 3:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{float(tick):.1f}</text>'
        )
    parts.append(
        f'<rect x="{left}" y="{top}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="black"/>'
    )
    parts.append(
        f'<text x="{left + plot_w / 2:.1f}" y="{height - 8}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="11">meaningless score</text>'
    )
    if cdf.sample_count:
        coords = [(x_at(Fraction(0)), y_at(Fraction(0)))]
        previous = Fraction(0)
        for score, cumulative in cdf.points:
            coords.append((x_at(score), y_at(previous)))
            coords.append((x_at(score), y_at(cumulative)))
            previous = cumulative
        coords.append((x_at(Fraction(1)), y_at(previous)))
        path = " ".join(f"{x:.2f},{y:.2f}" for x, y in coords)
        parts.append(
            f'<polyline fill="none" stroke="#1f77b4" stroke-width="1.5" points="{path}"/>'
        )
    else:
        parts.append(
            f'<text x="{left + plot_w / 2:.1f}" y="{top + plot_h / 2:.1f}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="12">'
            "no samples</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_reports(report: CorpusReport, out_dir: str | Path, plots: bool = False) -> None:
    """Write every report file under out_dir (created if needed).

    Identical reports produce byte-identical files; each file is written to
    a temporary name in the same directory and renamed into place.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    function_rows = []
    for r in report.records:
        undefined = r.meaningless is None
        function_rows.append(
            [
                r.file,
                r.line,
                r.function,
                r.total_words,
                r.meaningful_words,
                r.meaningless_words,
                "" if undefined else format_fixed6(r.meaningless),
                NO_MEANINGFUL_FLAG if undefined else "",
            ]
        )
    _atomic_write(out / "functions.csv", _csv_text(FUNCTIONS_HEADER, function_rows))

    file_rows = [
        [
            s.file,
            s.total_functions,
            s.total_empty,
            "" if s.empty_percent is None else format_fixed6(s.empty_percent),
        ]
        for s in report.file_stats
    ]
    _atomic_write(out / "files.csv", _csv_text(FILES_HEADER, file_rows))

    _atomic_write(
        out / "failures.csv",
        _csv_text(FAILURES_HEADER, [[f.file, f.reason] for f in report.failures]),
    )

    _atomic_write(
        out / "cdf_pooled.csv", _csv_text(CDF_HEADER, _cdf_rows(report.pooled_cdf))
    )
    for project, name in _project_filenames(report.per_project_cdfs, ".csv"):
        _atomic_write(
            out / name,
            _csv_text(CDF_HEADER, _cdf_rows(report.per_project_cdfs[project])),
        )

    _atomic_write(out / "summary.txt", render_summary(report))

    if plots:
        _atomic_write(
            out / "cdf_pooled.svg", render_cdf_svg(report.pooled_cdf, "pooled")
        )
        for project, name in _project_filenames(report.per_project_cdfs, ".svg"):
            _atomic_write(
                out / name,
                render_cdf_svg(report.per_project_cdfs[project], project),
            )
