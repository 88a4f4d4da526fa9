"""
Text formats for Coxeter matrices.

Two line-oriented forms are accepted; the first keyword decides which.

    # matrix form: the strict upper triangle, row by row
    matrix 3
    3 inf
    3

    # diagram form: named vertices, unmentioned pairs commute (label 2)
    vertices s t u
    edge s t inf
    edge t u 5

A ';' separates statements like a newline and '#' starts a comment.
"""
import re
import sys
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Tuple

from .core.coxeter import INF, CoxeterMatrix, label_text
from .utils import DslSyntaxError, InputError

logger = logging.getLogger(__file__)

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
INTEGER = re.compile(r"[+-]?[0-9]+")
KEYWORDS = {"matrix", "vertices", "edge", "inf"}
# Longer integers are rejected before conversion.
MAX_DIGITS = 18


@dataclass(frozen=True)
class SourceDoc:
    text: str
    origin: str = "<inline>"


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    column: int


def read_source(path: str) -> SourceDoc:
    """Reads a document from a file path, or from stdin when path is '-'."""
    if path == "-":
        try:
            return SourceDoc(sys.stdin.buffer.read().decode("utf-8"), "<stdin>")
        except UnicodeDecodeError as e:
            raise InputError(f"Cannot read <stdin>: {e}")
    try:
        return SourceDoc(Path(path).read_text(encoding="utf-8"), path)
    except FileNotFoundError:
        raise InputError(f"No such input file: {path}")
    except (OSError, UnicodeDecodeError) as e:
        raise InputError(f"Cannot read {path}: {e}")


def _statements(doc: SourceDoc) -> List[List[Token]]:
    """Splits the document into non-empty statements of positioned tokens."""
    statements = []
    for line_number, line in enumerate(doc.text.splitlines(), start=1):
        code = line.split("#", 1)[0]
        offset = 0
        for segment in code.split(";"):
            tokens = [Token(m.group(), line_number, offset + m.start() + 1) for m in re.finditer(r"\S+", segment)]
            if tokens:
                statements.append(tokens)
            offset += len(segment) + 1
    return statements


def _error(message: str, token: Token, origin: str) -> DslSyntaxError:
    return DslSyntaxError(message, token.line, token.column, origin)


def _integer(token: Token, what: str, origin: str) -> int:
    """Converts an INTEGER token, rejecting ones with more than MAX_DIGITS digits."""
    if len(token.text.lstrip("+-")) > MAX_DIGITS:
        raise _error(f"{what} {token.text[:20]}... is too long", token, origin)
    return int(token.text)


def _label(token: Token, origin: str):
    if token.text == "inf":
        return INF
    if not INTEGER.fullmatch(token.text):
        raise _error(f"expected an integer label or 'inf', got {token.text!r}", token, origin)
    value = _integer(token, "label", origin)
    if value < 2:
        raise _error(f"label < 2: {value}", token, origin)
    return value


def _parse_matrix(statements: List[List[Token]], origin: str) -> CoxeterMatrix:
    header = statements[0]
    if len(header) != 2 or not INTEGER.fullmatch(header[1].text):
        raise _error("expected 'matrix n' with a positive integer n", header[-1] if len(header) > 1 else header[0], origin)
    n = _integer(header[1], "matrix size", origin)
    if n < 1:
        raise _error("expected 'matrix n' with a positive integer n", header[1], origin)
    rows = statements[1:]
    for index, row in enumerate(rows):
        if index >= n - 1:
            raise _error(f"unexpected row: a {n}x{n} matrix has {n - 1} upper-triangle rows", row[0], origin)
        expected = n - 1 - index
        if len(row) != expected:
            raise _error(f"row {index + 1} needs {expected} labels, got {len(row)}", row[0], origin)
    if len(rows) < n - 1:
        last = (rows[-1] if rows else header)[-1]
        raise _error(f"expected {n - 1 - len(rows)} more upper-triangle rows", last, origin)
    labels = [[1] * n for _ in range(n)]
    for s, row in enumerate(rows):
        for offset, token in enumerate(row):
            t = s + 1 + offset
            labels[s][t] = labels[t][s] = _label(token, origin)
    return CoxeterMatrix.from_labels(labels)


def _parse_diagram(statements: List[List[Token]], origin: str) -> CoxeterMatrix:
    header = statements[0]
    if len(header) < 2:
        raise _error("'vertices' needs at least one vertex name", header[0], origin)
    index: Dict[str, int] = {}
    for token in header[1:]:
        if not IDENTIFIER.fullmatch(token.text) or token.text in KEYWORDS:
            raise _error(f"invalid vertex name {token.text!r}", token, origin)
        if token.text in index:
            raise _error(f"vertex {token.text!r} declared twice", token, origin)
        index[token.text] = len(index)

    edges: Dict[Tuple[int, int], object] = {}
    for statement in statements[1:]:
        keyword = statement[0]
        if keyword.text != "edge":
            raise _error(f"expected 'edge', got {keyword.text!r}", keyword, origin)
        if len(statement) != 4:
            raise _error("expected 'edge X Y m'", keyword, origin)
        first, second, label = statement[1:]
        for token in (first, second):
            if token.text not in index:
                raise _error(f"unknown vertex {token.text!r}", token, origin)
        if first.text == second.text:
            raise _error(f"self-edge on {first.text!r}", second, origin)
        pair = tuple(sorted((index[first.text], index[second.text])))
        if pair in edges:
            raise _error(f"duplicate pair {first.text} {second.text}", first, origin)
        edges[pair] = _label(label, origin)
    return CoxeterMatrix.from_edges(len(index), edges, tuple(index))


def parse(doc) -> CoxeterMatrix:
    """Parses a SourceDoc (or a plain string) in either form into a validated matrix."""
    if isinstance(doc, str):
        doc = SourceDoc(doc)
    statements = _statements(doc)
    if not statements:
        raise DslSyntaxError("empty document: expected 'matrix' or 'vertices'", 1, 1, doc.origin)
    keyword = statements[0][0]
    if keyword.text == "matrix":
        matrix = _parse_matrix(statements, doc.origin)
    elif keyword.text == "vertices":
        matrix = _parse_diagram(statements, doc.origin)
    else:
        raise _error(f"expected 'matrix' or 'vertices', got {keyword.text!r}", keyword, doc.origin)
    logger.debug(f"Parsed {doc.origin}: {matrix.n} generators {matrix.names}.")
    return matrix


def render(matrix: CoxeterMatrix, form: str = "diagram") -> str:
    """DSL text for a matrix; parsing it back gives the same matrix."""
    if form == "matrix":
        lines = [f"matrix {matrix.n}"]
        lines += [" ".join(label_text(m) for m in matrix.labels[s][s + 1:]) for s in range(matrix.n - 1)]
    elif form == "diagram":
        bad = [name for name in matrix.names if not IDENTIFIER.fullmatch(name) or name in KEYWORDS]
        if bad:
            raise InputError(f"Generator names {bad} cannot be written in diagram form.")
        lines = ["vertices " + " ".join(matrix.names)]
        lines += [f"edge {matrix.names[s]} {matrix.names[t]} {label_text(m)}" for s, t, m in matrix.edges()]
    else:
        raise InputError(f"Unknown form {form!r}; expected 'diagram' or 'matrix'.")
    return "\n".join(lines) + "\n"
