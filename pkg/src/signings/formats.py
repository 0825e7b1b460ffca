"""Plain-text graph and matrix files, and JSON certificates.

Edge list::

    n m
    u v        (m lines, 0-indexed, "u u" is a loop)

Coordinate matrix::

    n nnz
    i j value  (nnz lines, i <= j, value an integer or p/q)
"""

from __future__ import annotations

import sys
from fractions import Fraction
from typing import TextIO

from .exactla import SymMatrix
from .graphcore import Graph, TwoMatching
from .signlab import Signing


class FormatError(ValueError):
    pass


def _lines(text: str) -> list[list[str]]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line.split())
    return out


def _int(tok: str, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"{what}: expected an integer, got {tok!r}") from None


def parse_rational(tok: str) -> Fraction:
    try:
        if "." in tok or "e" in tok.lower():
            raise ValueError
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad rational {tok!r}; use an integer or p/q") from None


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def parse_edge_list(text: str) -> Graph:
    rows = _lines(text)
    if not rows or len(rows[0]) != 2:
        raise FormatError("edge list needs a header line 'n m'")
    n, m = (_int(t, "header") for t in rows[0])
    body = rows[1:]
    if n < 0 or m < 0:
        raise FormatError("negative counts in header")
    if len(body) != m:
        raise FormatError(f"header says {m} edges, found {len(body)}")
    edges = set()
    for k, row in enumerate(body, start=2):
        if len(row) != 2:
            raise FormatError(f"line {k}: expected 'u v'")
        u, v = (_int(t, f"line {k}") for t in row)
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"line {k}: vertex out of range 0..{n - 1}")
        e = (min(u, v), max(u, v))
        if e in edges:
            raise FormatError(f"line {k}: duplicate edge {e}")
        edges.add(e)
    return Graph(n, frozenset(edges))


def emit_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_coord_matrix(text: str) -> SymMatrix:
    rows = _lines(text)
    if not rows or len(rows[0]) != 2:
        raise FormatError("matrix file needs a header line 'n nnz'")
    n, nnz = (_int(t, "header") for t in rows[0])
    if n < 1:
        raise FormatError("matrix dimension must be >= 1")
    body = rows[1:]
    if len(body) != nnz:
        raise FormatError(f"header says {nnz} entries, found {len(body)}")
    entries = {}
    for k, row in enumerate(body, start=2):
        if len(row) != 3:
            raise FormatError(f"line {k}: expected 'i j value'")
        i, j = _int(row[0], f"line {k}"), _int(row[1], f"line {k}")
        if not (0 <= i <= j < n):
            raise FormatError(f"line {k}: need 0 <= i <= j < {n}")
        v = parse_rational(row[2])
        if v == 0:
            raise FormatError(f"line {k}: explicit zero entry")
        if (i, j) in entries:
            raise FormatError(f"line {k}: duplicate entry ({i}, {j})")
        entries[(i, j)] = v
    return SymMatrix(n, entries)


def emit_coord_matrix(M: SymMatrix) -> str:
    lines = [f"{M.n} {len(M.entries)}"] + [f"{i} {j} {format_rational(v)}" for i, j, v in M.items()]
    return "\n".join(lines) + "\n"


def graph_as_matrix(G: Graph) -> SymMatrix:
    return SymMatrix(max(G.n, 1), {e: 1 for e in G.edges})


def read_source(path: str, stdin: TextIO | None = None) -> str:
    if path == "-":
        return (stdin or sys.stdin).read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


# ---------------------------------------------------------------- JSON pieces


def signing_to_json(s: Signing) -> dict:
    return {
        "mode": s.mode,
        "edges": [[u, v, sg] for (u, v), sg in sorted(s.edge_signs.items())],
        "diagonal": [[v, sg] for v, sg in sorted(s.diagonal_signs.items())],
    }


def signing_from_json(n: int, obj: dict) -> Signing:
    return Signing(
        n,
        {(u, v): sg for u, v, sg in obj["edges"]},
        {v: sg for v, sg in obj.get("diagonal", [])},
        obj.get("mode", "off-diagonal"),
    )


def two_matching_to_json(x: TwoMatching) -> list[list[int]]:
    return [[u, v, val] for (u, v), val in x.items()]


def two_matching_from_json(obj) -> TwoMatching:
    return TwoMatching({(u, v): val for u, v, val in obj})
