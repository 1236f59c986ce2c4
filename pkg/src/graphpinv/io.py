"""
Edge-list and dense-matrix text formats.

Edge lists::

    # comment lines start with '#'
    n 5          (optional, must precede every edge)
    1 2
    1 3

Blank lines are ignored. Without the ``n`` header the order is the largest
vertex index that appears.

Matrices are written row-major as TSV or CSV with ``.`` as decimal
separator, or as Matrix Market ``array real general`` (column-major, both
triangles stored).
"""
from __future__ import annotations

import numpy as np

from .graph import Graph, GraphError

MATRIX_FORMATS = ("tsv", "csv", "mm")
MM_HEADER = "%%MatrixMarket matrix array real general"


class FormatError(GraphError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_edge_list(text: str) -> Graph:
    order = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "n":
            if order is not None or edges:
                raise FormatError("'n' header must come first and appear once", lineno)
            if len(fields) != 2 or not fields[1].isdecimal() or int(fields[1]) < 1:
                raise FormatError(f"malformed header {line!r}", lineno)
            order = int(fields[1])
            continue
        if len(fields) != 2 or not all(f.isdecimal() for f in fields):
            raise FormatError(f"expected two positive integers, got {line!r}", lineno)
        i, j = int(fields[0]), int(fields[1])
        if i < 1 or j < 1:
            raise FormatError("vertex indices start at 1", lineno)
        if i == j:
            raise FormatError(f"self-loop at vertex {i}", lineno)
        if order is not None and max(i, j) > order:
            raise FormatError(f"vertex {max(i, j)} exceeds declared order {order}", lineno)
        key = (min(i, j), max(i, j))
        if key in seen:
            raise FormatError(f"duplicate edge {{{key[0]}, {key[1]}}}", lineno)
        seen.add(key)
        edges.append((i, j))
    if order is None:
        if not edges:
            raise FormatError("empty edge list without an 'n' header")
        order = max(max(e) for e in edges)
    return Graph(order, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"n {g.order}"] + [f"{i} {j}" for i, j in g.edges]
    return "\n".join(lines) + "\n"


def _fmt(v: float, precision: int) -> str:
    # round first so tiny negatives do not print as -0.000...
    return f"{round(float(v), precision) + 0.0:.{precision}f}"


def format_matrix(a, fmt: str = "tsv", precision: int = 12) -> str:
    """Fixed-point text for `a`; rereading changes no entry by more than
    ``0.5 * 10**-precision``."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {a.shape}")
    if fmt in ("tsv", "csv"):
        sep = "\t" if fmt == "tsv" else ","
        rows = (sep.join(_fmt(v, precision) for v in row) for row in a)
        return "\n".join(rows) + "\n"
    if fmt == "mm":
        body = [MM_HEADER, f"{a.shape[0]} {a.shape[1]}"]
        body += [_fmt(v, precision) for v in a.T.ravel()]
        return "\n".join(body) + "\n"
    raise ValueError(f"unknown matrix format {fmt!r}; choose from {MATRIX_FORMATS}")


def parse_matrix(text: str) -> np.ndarray:
    """Read any of the formats written by `format_matrix`."""
    lines = [ln.strip() for ln in text.splitlines()]
    if lines and lines[0].lower().startswith("%%matrixmarket"):
        header = lines[0].lower().split()
        if header[1:] != ["matrix", "array", "real", "general"]:
            raise FormatError(f"unsupported Matrix Market header {lines[0]!r}", 1)
        data = [ln for ln in lines[1:] if ln and not ln.startswith("%")]
        try:
            rows, cols = (int(t) for t in data[0].split())
            values = np.array([float(t) for t in data[1:]])
        except (ValueError, IndexError) as exc:
            raise FormatError(f"malformed Matrix Market body: {exc}") from None
        if values.size != rows * cols:
            raise FormatError(f"expected {rows * cols} values, found {values.size}")
        return values.reshape(cols, rows).T.copy()

    rows = []
    for lineno, line in enumerate(lines, start=1):
        if not line or line.startswith("#"):
            continue
        parts = line.split(",") if "," in line else line.split()
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            raise FormatError(f"non-numeric entry in {line!r}", lineno) from None
        if len(rows[-1]) != len(rows[0]):
            raise FormatError("ragged matrix rows", lineno)
    if not rows:
        raise FormatError("no matrix data")
    return np.array(rows)
