import ast
import textwrap

from docmeter.extract import (
    FunctionRecord,
    ParseFailure,
    extract_file,
    extract_functions,
    signature_word_set,
)

NESTED_SOURCE = textwrap.dedent(
    '''
    def outer(a):
        """Outer doc."""
        class Holder:
            def method(self, b):
                """Method doc."""
                def inner(c):
                    return c
                return inner
        return Holder

    async def forwarder(*items, retries: int = 3, **extras) -> None:
        """Forward items."""
    '''
)


def test_minimal_documented_function():
    result = extract_functions('def f(x): "doc"', "m.py")
    assert isinstance(result, list) and len(result) == 1
    rec = result[0]
    assert rec.name == "f"
    assert rec.line == 1
    assert rec.param_names == ("x",)
    assert rec.param_types == (None,)
    assert rec.docstring == "doc"
    assert rec.is_documented


def test_undocumented_function():
    (rec,) = extract_functions("def g(a, b): return a", "m.py")
    assert rec.docstring is None
    assert not rec.is_documented


def test_nested_definitions_match_manual_ast_walk():
    result = extract_functions(NESTED_SOURCE, "m.py")
    expected = sum(
        isinstance(node, (ast.FunctionDef, ast.AsyncFunctionDef))
        for node in ast.walk(ast.parse(NESTED_SOURCE))
    )
    assert len(result) == expected == 4
    by_name = {rec.name: rec for rec in result}
    assert by_name["outer"].nesting_depth == 0
    assert by_name["method"].nesting_depth == 2
    assert by_name["inner"].nesting_depth == 3
    assert by_name["forwarder"].nesting_depth == 0
    # source order preserved
    assert [rec.name for rec in result] == ["outer", "method", "inner", "forwarder"]


def test_records_point_at_def_lines():
    source = NESTED_SOURCE
    lines = source.splitlines()
    for rec in extract_functions(source, "m.py"):
        assert rec.name in lines[rec.line - 1]


def test_parameter_kinds_and_annotations():
    source = (
        "def h(pos, /, a, b: int, *args: str, kw: 'Wrapper[T]' = None, **extra) -> bool:\n"
        "    pass\n"
    )
    (rec,) = extract_functions(source, "m.py")
    assert rec.param_names == ("pos", "a", "b", "args", "kw", "extra")
    assert rec.param_types == (None, None, "int", "str", "'Wrapper[T]'", None)
    assert rec.return_type == "bool"


def test_default_values_contribute_no_signature_words():
    (rec,) = extract_functions("def f(x=SECRET_TOKEN): pass", "m.py")
    assert signature_word_set(rec) == {"f", "x"}


def test_async_and_decorated_functions_are_ordinary():
    source = textwrap.dedent(
        '''
        @decorator.marker
        async def fetch_remote(url):
            """Grab one url."""
        '''
    )
    (rec,) = extract_functions(source, "m.py")
    assert rec.name == "fetch_remote"
    assert rec.docstring == "Grab one url."
    # line points at the def, not the decorator
    assert source.splitlines()[rec.line - 1].lstrip().startswith("async def")


def test_lambdas_are_not_records():
    result = extract_functions("handler = lambda x: x", "m.py")
    assert result == []


def test_non_string_first_statements_are_not_docstrings():
    source = textwrap.dedent(
        """
        def f():
            b"bytes first"

        def g():
            f"formatted {x}"

        def h():
            "part one " "and two"
        """
    )
    records = {rec.name: rec for rec in extract_functions(source, "m.py")}
    assert records["f"].docstring is None
    assert records["g"].docstring is None
    assert records["h"].docstring == "part one and two"


def test_whitespace_docstring_counts_as_undocumented():
    (rec,) = extract_functions('def f():\n    "   \\n "\n', "m.py")
    assert rec.docstring is not None
    assert not rec.is_documented


def test_zero_functions_is_not_a_failure():
    assert extract_functions("X = 1\n", "m.py") == []


def test_syntax_error_is_a_parse_failure():
    result = extract_functions("def broken(:\n", "bad.py")
    assert isinstance(result, ParseFailure)
    assert result.file == "bad.py"
    assert result.reason


def test_null_byte_is_a_parse_failure():
    result = extract_functions("def f():\x00 pass", "nul.py")
    assert isinstance(result, ParseFailure)


def test_extract_is_deterministic():
    first = extract_functions(NESTED_SOURCE, "m.py")
    second = extract_functions(NESTED_SOURCE, "m.py")
    assert first == second


def test_extract_file_handles_undecodable_bytes(tmp_path):
    bad = tmp_path / "junk.py"
    bad.write_bytes(b"\xff\xfe\x00junk\x80\x81")
    result = extract_file(bad, "junk.py")
    assert isinstance(result, ParseFailure)
    assert "UnicodeDecodeError" in result.reason


def test_extract_file_tolerates_utf8_bom(tmp_path):
    path = tmp_path / "bom.py"
    path.write_bytes(b'\xef\xbb\xbfdef f(x): "doc"\n')
    result = extract_file(path, "bom.py")
    assert isinstance(result, list) and result[0].name == "f"


def test_extract_file_unreadable_is_failure(tmp_path):
    result = extract_file(tmp_path / "missing.py", "missing.py")
    assert isinstance(result, ParseFailure)
    assert "unreadable" in result.reason


def test_signature_word_set_examples():
    rec = FunctionRecord(
        file="m.py",
        line=1,
        name="setToolTipText",
        param_names=("text",),
        param_types=("String",),
    )
    assert signature_word_set(rec) == {"set", "tool", "tip", "text", "string"}

    single = FunctionRecord(file="m.py", line=1, name="f")
    assert signature_word_set(single) == {"f"}

    reader = FunctionRecord(
        file="m.py", line=1, name="read_info", param_names=("info",), param_types=(None,)
    )
    assert signature_word_set(reader) == {"read", "info"}
