"""Locate function definitions in Python source and capture their interface."""

from __future__ import annotations

import ast
from dataclasses import dataclass
from pathlib import Path

from .tokenizer import partition_text


@dataclass
class FunctionRecord:
    """One function definition: location, signature parts, raw docstring."""

    file: str
    line: int
    name: str
    param_names: tuple[str, ...] = ()
    param_types: tuple[str | None, ...] = ()
    return_type: str | None = None
    docstring: str | None = None
    nesting_depth: int = 0

    @property
    def is_documented(self) -> bool:
        """True when a docstring exists and is not pure whitespace."""
        return self.docstring is not None and bool(self.docstring.strip())


@dataclass
class ParseFailure:
    """A file that could not be analyzed, with a human-readable reason."""

    file: str
    reason: str


def _annotation(node) -> str | None:
    return None if node is None else ast.unparse(node)


def _record(node, file: str, depth: int) -> FunctionRecord:
    names: list[str] = []
    types: list[str | None] = []
    args = node.args
    for arg in [*args.posonlyargs, *args.args]:
        names.append(arg.arg)
        types.append(_annotation(arg.annotation))
    if args.vararg is not None:
        names.append(args.vararg.arg)
        types.append(_annotation(args.vararg.annotation))
    for arg in args.kwonlyargs:
        names.append(arg.arg)
        types.append(_annotation(arg.annotation))
    if args.kwarg is not None:
        names.append(args.kwarg.arg)
        types.append(_annotation(args.kwarg.annotation))
    return FunctionRecord(
        file=file,
        line=node.lineno,
        name=node.name,
        param_names=tuple(names),
        param_types=tuple(types),
        return_type=_annotation(node.returns),
        docstring=ast.get_docstring(node, clean=False),
        nesting_depth=depth,
    )


def extract_functions(source: str, file: str) -> list[FunctionRecord] | ParseFailure:
    """Extract every function definition, at any nesting depth, in source order.

    Named and async functions are recorded; lambdas are not (they cannot
    carry docstrings).  Default parameter values are ignored.  A source
    that cannot be parsed yields a ParseFailure instead of raising.
    """
    try:
        tree = ast.parse(source)
    except (SyntaxError, ValueError, RecursionError) as exc:
        return ParseFailure(file=file, reason=f"{type(exc).__name__}: {exc}")

    records: list[FunctionRecord] = []

    def walk(node, depth: int) -> None:
        for child in ast.iter_child_nodes(node):
            if isinstance(child, (ast.FunctionDef, ast.AsyncFunctionDef)):
                records.append(_record(child, file, depth))
                walk(child, depth + 1)
            elif isinstance(child, ast.ClassDef):
                walk(child, depth + 1)
            else:
                walk(child, depth)

    try:
        walk(tree, 0)
    except RecursionError as exc:
        return ParseFailure(file=file, reason=f"RecursionError: {exc}")
    return records


def extract_file(path: str | Path, rel: str) -> list[FunctionRecord] | ParseFailure:
    """Read one file as UTF-8 (BOM tolerated) and extract its functions.

    Unreadable or undecodable files become ParseFailures, never exceptions.
    """
    try:
        source = Path(path).read_bytes().decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        return ParseFailure(file=rel, reason=f"UnicodeDecodeError: {exc}")
    except OSError as exc:
        return ParseFailure(file=rel, reason=f"unreadable: {exc}")
    return extract_functions(source, rel)


def signature_word_set(rec: FunctionRecord) -> frozenset[str]:
    """The deduplicated words of a signature: function name, parameter
    names, parameter type annotations, and the return annotation.

    No length or stop-word filtering happens here; even one-letter names
    stay in the set (the scorer decides what may take part in which check).
    """
    words = set(partition_text(rec.name))
    for name in rec.param_names:
        words.update(partition_text(name))
    for annotation in rec.param_types:
        if annotation:
            words.update(partition_text(annotation))
    if rec.return_type:
        words.update(partition_text(rec.return_type))
    return frozenset(words)
