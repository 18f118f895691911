"""Word-level text processing shared by docstring and signature handling.

Docstrings and identifiers are reduced to flat lists of lowercase words:
every run of non-alphanumeric characters separates words (which already
takes snake_case apart), and camelCase identifiers are further split on
their internal capitalization.  The meaningful-word filter (length and
stop words) lives in :func:`filter_meaningful` and is applied only where
scoring calls for it.
"""

from __future__ import annotations

from pathlib import Path

# Deliberately short: words such as "and", "or" and "is" can carry real
# meaning when functions are described, so they stay scoreable.
DEFAULT_STOP_WORDS: frozenset[str] = frozenset(
    "the an of at by in it on to that had for was were".split()
)


def fold_case(text: str) -> str:
    """Lowercase one token character by character.

    str.lower() expands a handful of characters (e.g. U+0130) into a letter
    plus a combining mark; only the alphanumeric part of such expansions is
    kept so folded words never contain non-alphanumeric characters.
    """
    out = []
    for ch in text:
        low = ch.lower()
        if len(low) == 1:
            out.append(low)
        else:
            out.extend(c for c in low if c.isalnum())
    return "".join(out)


def _cased_upper(ch: str) -> bool:
    # symbols like U+1D54A report isupper() but have no lowercase mapping;
    # they cannot take part in camelCase boundaries or folding would
    # re-introduce boundaries and break the partition fixpoint
    return ch.isupper() and ch.lower() != ch


def split_identifier(token: str) -> list[str]:
    """Split one alphanumeric run on its internal capitalization.

    A new word starts where an uppercase letter follows a lowercase one
    ("parseHTTP" -> parse, http) and before the last capital of an
    uppercase run that is followed by lowercase ("HTTPServer" -> http,
    server).  Digits never introduce a boundary by themselves ("utf8"
    stays whole, "HTTPServer2" -> http, server2).  Output is lowercased.
    """
    boundaries = set()
    for i in range(1, len(token)):
        if _cased_upper(token[i]):
            if token[i - 1].islower():
                boundaries.add(i)
            if i + 1 < len(token) and token[i + 1].islower():
                boundaries.add(i)
    parts = []
    start = 0
    for cut in sorted(boundaries):
        parts.append(token[start:cut])
        start = cut
    parts.append(token[start:])
    return [word for word in (fold_case(p) for p in parts) if word]


def partition_text(text: str) -> list[str]:
    """Break arbitrary text into lowercase words, in order of appearance.

    Every maximal alphanumeric run becomes a candidate token which is then
    identifier-split.  Duplicates are preserved; the empty string yields
    an empty list.
    """
    words: list[str] = []
    run: list[str] = []
    for ch in text:
        if ch.isalnum():
            run.append(ch)
        elif run:
            words.extend(split_identifier("".join(run)))
            run.clear()
    if run:
        words.extend(split_identifier("".join(run)))
    return words


def filter_meaningful(
    words: list[str], stop_words: frozenset[str] = DEFAULT_STOP_WORDS
) -> list[str]:
    """Keep only words that can carry information: longer than a single
    character and not on the stop list.  Order and repetitions survive."""
    return [w for w in words if len(w) > 1 and w not in stop_words]


def load_stop_words(path: str | Path) -> frozenset[str]:
    """Read a stop-word list file: one word per line, '#' starts a comment."""
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        entry = line.split("#", 1)[0].strip()
        if entry:
            words.add(entry.lower())
    return frozenset(words)
