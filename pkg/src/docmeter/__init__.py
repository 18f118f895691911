"""docmeter: measure how much function docstrings repeat the signature.

The library mines Python source trees, extracts function signatures and
docstrings, and computes a per-function "meaningless score" (the share of
meaningful docstring words already present in the signature), plus corpus
statistics: per-file undocumented fractions and score CDFs.
"""

from .corpus import (
    ConfigError,
    CorpusConfig,
    DEFAULT_EXCLUDE_MARKERS,
    FileStats,
    SourceFile,
    scan_corpus,
    select_files,
)
from .extract import (
    FunctionRecord,
    ParseFailure,
    extract_file,
    extract_functions,
    signature_word_set,
)
from .report import (
    Cdf,
    CorpusReport,
    NoDataError,
    avg_undocumented,
    build_report,
    central_band,
    compute_cdf,
    emit_reports,
    flag_degenerate_projects,
    project_of,
    render_cdf_svg,
    render_summary,
)
from .score import (
    DocWordBag,
    ScoreRecord,
    classify_word,
    doc_word_bag,
    is_meaningless,
    score_function,
)
from .tokenizer import (
    DEFAULT_STOP_WORDS,
    filter_meaningful,
    load_stop_words,
    partition_text,
    split_identifier,
)

__version__ = "0.1.0"

__all__ = [
    "Cdf",
    "ConfigError",
    "CorpusConfig",
    "CorpusReport",
    "DEFAULT_EXCLUDE_MARKERS",
    "DEFAULT_STOP_WORDS",
    "DocWordBag",
    "FileStats",
    "FunctionRecord",
    "NoDataError",
    "ParseFailure",
    "ScoreRecord",
    "SourceFile",
    "avg_undocumented",
    "build_report",
    "central_band",
    "classify_word",
    "compute_cdf",
    "doc_word_bag",
    "emit_reports",
    "extract_file",
    "extract_functions",
    "filter_meaningful",
    "flag_degenerate_projects",
    "is_meaningless",
    "load_stop_words",
    "partition_text",
    "project_of",
    "render_cdf_svg",
    "render_summary",
    "scan_corpus",
    "score_function",
    "select_files",
    "signature_word_set",
    "split_identifier",
]
