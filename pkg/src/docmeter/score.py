"""The meaningless score: the fraction of a docstring that restates the signature.

A documented function is scored by looking at each meaningful docstring
word and asking whether the signature already contains it, either verbatim
or as a shortened version ("info" in the signature makes "information" in
the docstring meaningless).  A score near 1 means the docstring repeats
the signature; near 0 means its vocabulary is novel.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction

from .tokenizer import DEFAULT_STOP_WORDS, filter_meaningful, partition_text


@dataclass(frozen=True)
class DocWordBag:
    """Meaningful docstring words (repetitions kept) plus the raw word count."""

    words: tuple[str, ...]
    source_total: int


@dataclass
class ScoreRecord:
    """Per-function word counts and the meaningless score.

    `meaningless` is None when the docstring has no meaningful words at
    all; such records are flagged and excluded from distributions.
    """

    file: str
    line: int
    function: str
    total_words: int
    meaningful_words: int
    meaningless_words: int
    meaningless: Fraction | None
    # sha1 of the raw docstring; used to spot template-duplicated projects,
    # never serialized to CSV
    doc_fingerprint: str = ""


def doc_word_bag(
    text: str, stop_words: frozenset[str] = DEFAULT_STOP_WORDS
) -> DocWordBag:
    """Turn a docstring into its bag of meaningful words."""
    words = partition_text(text)
    return DocWordBag(
        words=tuple(filter_meaningful(words, stop_words)),
        source_total=len(words),
    )


def _substring_basis(sig_words, stop_words) -> list[str]:
    # one-letter or stop signature words are substrings of nearly anything
    # and would poison the shortened-version check; sorted for stable traces
    return sorted(v for v in sig_words if len(v) > 1 and v not in stop_words)


def is_meaningless(
    word: str, sig_words, stop_words: frozenset[str] = DEFAULT_STOP_WORDS
) -> bool:
    """True when the signature already contains the word, or contains a
    shortened version of it as a contiguous substring."""
    if word in sig_words:
        return True
    return any(v in word for v in _substring_basis(sig_words, stop_words))


def classify_word(
    word: str, sig_words, stop_words: frozenset[str] = DEFAULT_STOP_WORDS
) -> tuple[str, str]:
    """Explain one docstring word: ("meaningless" | "meaningful", reason)."""
    if word in sig_words:
        return "meaningless", "appears in the signature"
    for v in _substring_basis(sig_words, stop_words):
        if v in word:
            return "meaningless", f"signature word '{v}' is a shortened version"
    return "meaningful", "novel word"


def docstring_fingerprint(text: str) -> str:
    return hashlib.sha1(text.encode("utf-8")).hexdigest()


def score_function(
    doc: DocWordBag,
    sig_words,
    stop_words: frozenset[str] = DEFAULT_STOP_WORDS,
    *,
    file: str = "",
    line: int = 0,
    function: str = "",
) -> ScoreRecord:
    """Count meaningless words over the bag (repetitions count) and score.

    score = meaningless / meaningful, or None for an empty bag.  The
    file/line/function metadata is carried through for reporting.
    """
    basis = _substring_basis(sig_words, stop_words)
    meaningless = 0
    for word in doc.words:
        if word in sig_words or any(v in word for v in basis):
            meaningless += 1
    meaningful = len(doc.words)
    return ScoreRecord(
        file=file,
        line=line,
        function=function,
        total_words=doc.source_total,
        meaningful_words=meaningful,
        meaningless_words=meaningless,
        meaningless=Fraction(meaningless, meaningful) if meaningful else None,
    )
