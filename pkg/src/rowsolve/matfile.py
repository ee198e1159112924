"""Plain-text matrix files and the row-stream line protocol.

Matrix file::

    # comment lines start with '#'; blank lines are ignored
    3 3
    0 0,-3 0
    0,2 1 -1
    0,4 2,-3 -2

The header gives ``m n``; each of the ``m`` following lines holds ``n``
whitespace-separated entries.  An entry is ``re`` or ``re,im`` (no spaces
around the comma) in decimal or scientific notation.

Stream (stdin of ``rowsolve stream``)::

    n 3
    0 0,-3 0 | 1
    0,2 1 -1 | 0,2
    END
"""

import re

import numpy as np

_REAL = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_ENTRY = re.compile(rf"({_REAL})(?:,({_REAL}))?")


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


def parse_entry(token, line=None, column=None):
    match = _ENTRY.fullmatch(token)
    if match is None:
        raise ParseError(f"malformed entry {token!r}", line, column)
    re_part, im_part = match.groups()
    return complex(float(re_part), float(im_part) if im_part is not None else 0.0)


def _tokens_with_columns(text):
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", text)]


def _content_lines(lines):
    for lineno, raw in enumerate(lines, 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, raw.rstrip("\n")


def _parse_count(token, what, line, column):
    if not token.isdigit() or int(token) < 1:
        raise ParseError(f"{what} must be a positive integer, got {token!r}", line, column)
    return int(token)


def parse_matrix(text):
    """Parse matrix-file text into an ``(m, n)`` complex128 array."""
    lines = _content_lines(text.splitlines())
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("missing 'm n' header") from None
    toks = _tokens_with_columns(header)
    if len(toks) != 2:
        raise ParseError("header must be 'm n'", lineno)
    m = _parse_count(toks[0][0], "row count", lineno, toks[0][1])
    n = _parse_count(toks[1][0], "column count", lineno, toks[1][1])

    out = np.empty((m, n), dtype=np.complex128)
    row = 0
    for lineno, raw in lines:
        if row == m:
            raise ParseError(f"more than {m} rows", lineno)
        toks = _tokens_with_columns(raw)
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, found {len(toks)}", lineno)
        for j, (tok, col) in enumerate(toks):
            out[row, j] = parse_entry(tok, lineno, col)
        row += 1
    if row != m:
        raise ParseError(f"expected {m} rows, found {row}")
    return out


def read_matrix(path):
    with open(path) as fh:
        return parse_matrix(fh.read())


def format_entry(z):
    z = complex(z)
    return f"{z.real:.17g},{z.imag:.17g}"


def format_matrix(a):
    """Serialize a 2-D array; :func:`parse_matrix` restores it bit for bit."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    lines = [f"{a.shape[0]} {a.shape[1]}"]
    lines.extend(" ".join(format_entry(z) for z in row) for row in a)
    return "\n".join(lines) + "\n"


def parse_stream_header(raw, lineno):
    toks = _tokens_with_columns(raw)
    if len(toks) != 2 or toks[0][0] != "n":
        raise ParseError("stream must start with 'n <count>'", lineno)
    return _parse_count(toks[1][0], "column count", lineno, toks[1][1])


def parse_stream_row(raw, n, lineno):
    """Parse ``a_1 ... a_n | b`` into ``(row, b)``."""
    left, bar, right = raw.partition("|")
    if not bar:
        raise ParseError("missing '|' separator", lineno)
    toks = _tokens_with_columns(left)
    if len(toks) != n:
        raise ParseError(f"expected {n} entries before '|', found {len(toks)}", lineno)
    row = np.array([parse_entry(t, lineno, c) for t, c in toks], dtype=np.complex128)
    rtoks = _tokens_with_columns(right)
    if len(rtoks) != 1:
        raise ParseError(f"expected one entry after '|', found {len(rtoks)}", lineno)
    tok, col = rtoks[0]
    return row, parse_entry(tok, lineno, col + len(left) + 1)
