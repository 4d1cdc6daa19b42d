"""Line-oriented text formats for graphs, momenta and configurations.

Graph::

    v a
    v b
    e e1 a b      # edge e1 with tail a and head b

Momentum (unlisted vertices get 0)::

    p a 1
    p b -1

Configuration::

    n 3
    1 1 0
    0 -1 2
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .config import Configuration
from .errors import ParseError, ZeroConfigurationError
from .exactalg import RatMatrix, mat_rank, rat, rat_text
from .graphhom import MAX_EDGES, Multigraph, as_momentum


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _rational(tok: str, lineno: int) -> Fraction:
    try:
        return rat(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"line {lineno}: {tok!r} is not a rational number") from None


def detect_kind(text: str) -> str:
    for _, parts in _lines(text):
        if parts[0] == "n":
            return "config"
        if parts[0] in ("v", "e"):
            return "graph"
        raise ParseError(f"cannot tell the input kind from directive {parts[0]!r}")
    raise ParseError("empty input")


def parse_graph(text: str, max_edges: int = MAX_EDGES) -> Multigraph:
    vertices: dict[str, int] = {}
    edge_names: list[str] = []
    edges: list[tuple[int, int]] = []
    for lineno, parts in _lines(text):
        kind = parts[0]
        if kind == "v":
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: expected 'v <name>'")
            if parts[1] in vertices:
                raise ParseError(f"line {lineno}: duplicate vertex {parts[1]!r}")
            vertices[parts[1]] = len(vertices)
        elif kind == "e":
            if len(parts) != 4:
                raise ParseError(f"line {lineno}: expected 'e <name> <tail> <head>'")
            name, tail, head = parts[1:]
            if name in edge_names:
                raise ParseError(f"line {lineno}: duplicate edge {name!r}")
            for v in (tail, head):
                if v not in vertices:
                    raise ParseError(f"line {lineno}: undeclared vertex {v!r}")
            edge_names.append(name)
            edges.append((vertices[tail], vertices[head]))
        else:
            raise ParseError(f"line {lineno}: unknown directive {kind!r}")
    if not vertices:
        raise ParseError("graph has no vertices")
    return Multigraph(len(vertices), tuple(edges), tuple(vertices), tuple(edge_names), max_edges)


def emit_graph(G: Multigraph) -> str:
    out = [f"v {name}" for name in G.vertex_names]
    for name, (t, h) in zip(G.edge_names, G.edges):
        out.append(f"e {name} {G.vertex_names[t]} {G.vertex_names[h]}")
    return "\n".join(out) + "\n"


def parse_momentum(text: str, G: Multigraph) -> tuple[Fraction, ...]:
    index = {name: i for i, name in enumerate(G.vertex_names)}
    p = [Fraction(0)] * G.vertex_count
    given = set()
    for lineno, parts in _lines(text):
        if parts[0] != "p" or len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 'p <vertex> <rational>'")
        if parts[1] not in index:
            raise ParseError(f"line {lineno}: unknown vertex {parts[1]!r}")
        if parts[1] in given:
            raise ParseError(f"line {lineno}: momentum for {parts[1]!r} given twice")
        given.add(parts[1])
        p[index[parts[1]]] = _rational(parts[2], lineno)
    return tuple(p)


def emit_momentum(G: Multigraph, p: Sequence) -> str:
    p = as_momentum(G, p)
    return "".join(f"p {name} {rat_text(x)}\n" for name, x in zip(G.vertex_names, p) if x)


def parse_configuration(text: str) -> Configuration:
    n = None
    rows = []
    for lineno, parts in _lines(text):
        if n is None:
            if parts[0] != "n" or len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(f"line {lineno}: configuration must start with 'n <int>'")
            n = int(parts[1])
            if n < 1:
                raise ParseError(f"line {lineno}: ground set must be nonempty")
            continue
        if len(parts) != n:
            raise ParseError(f"line {lineno}: expected {n} entries, got {len(parts)}")
        rows.append([_rational(t, lineno) for t in parts])
    if n is None:
        raise ParseError("missing 'n <int>' header")
    if not rows:
        raise ZeroConfigurationError("configuration file lists no basis rows")
    M = RatMatrix.from_rows(rows, n)
    rank = mat_rank(M)
    if rank == 0:
        raise ZeroConfigurationError("basis rows span the zero subspace")
    if rank != len(rows):
        raise ParseError("configuration basis rows are linearly dependent")
    return Configuration(M)


def emit_configuration(W: Configuration) -> str:
    out = [f"n {W.n}"]
    out.extend(" ".join(rat_text(x) for x in row) for row in W.rows())
    return "\n".join(out) + "\n"


def parse_point(text: str) -> tuple[Fraction, ...]:
    toks = [t for t in text.replace(",", " ").split() if t]
    if not toks:
        raise ParseError("empty point")
    return tuple(_rational(t, 0) for t in toks)


def parse_subset(text: str, names: Sequence[str]) -> tuple[int, ...]:
    """Comma separated edge names or 1-based indices."""
    index = {name: i for i, name in enumerate(names)}
    out = set()
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if tok in index:
            out.add(index[tok])
        elif tok.isdigit() and 1 <= int(tok) <= len(names):
            out.add(int(tok) - 1)
        else:
            raise ParseError(f"unknown ground-set element {tok!r}")
    return tuple(sorted(out))
