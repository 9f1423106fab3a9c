"""Text formats: graph files, axiom files, DOT export, partition literals.

Graph file format, one directive per line ('#' starts a comment, blank
lines are ignored)::

    vertices: a b c
    edge: a b 3

Exactly one ``vertices:`` directive, then zero or more ``edge:`` directives.
Axiom files are the same format preceded by a ``name:`` directive.
Emission is canonical (sorted vertices and edges), so parse(emit(g)) == g
and emit(parse(text)) is idempotent.
"""

from __future__ import annotations

from .graph import CoxeterGraph, GraphError
from .partition import Partition, quotient

__all__ = [
    "ParseError",
    "parse_graph",
    "emit_graph",
    "parse_axiom",
    "emit_axiom",
    "load_graph_file",
    "load_axiom_file",
    "to_dot",
    "quotient_to_dot",
    "parse_partition",
    "format_partition",
]


class ParseError(ValueError):
    """Malformed input text; carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


def _directives(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'directive: ...', got {line!r}", lineno)
        yield lineno, head.strip(), rest.strip()


def _parse(text: str, allow_name: bool):
    name: str | None = None
    vertices: list[str] | None = None
    vertices_line = 0
    edges: list[tuple[str, str, int]] = []
    for lineno, head, rest in _directives(text):
        if head == "name":
            if not allow_name:
                raise ParseError("'name:' directive is only valid in axiom files", lineno)
            if name is not None:
                raise ParseError("duplicate 'name:' directive", lineno)
            if vertices is not None:
                raise ParseError("'name:' must come before 'vertices:'", lineno)
            if not rest:
                raise ParseError("empty axiom name", lineno)
            name = rest
        elif head == "vertices":
            if vertices is not None:
                raise ParseError("duplicate 'vertices:' directive", lineno)
            vertices = rest.split()
            vertices_line = lineno
        elif head == "edge":
            if vertices is None:
                raise ParseError("'edge:' before 'vertices:'", lineno)
            parts = rest.split()
            if len(parts) != 3:
                raise ParseError(f"expected 'edge: v w m', got {rest!r}", lineno)
            s, t, m_text = parts
            try:
                m = int(m_text)
            except ValueError:
                raise ParseError(f"edge label is not an integer: {m_text!r}", lineno) from None
            edges.append((s, t, m))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if vertices is None:
        raise ParseError("missing 'vertices:' directive")
    if allow_name and name is None:
        raise ParseError("axiom file is missing a 'name:' directive")
    try:
        graph = CoxeterGraph(vertices, edges)
    except GraphError as exc:
        raise ParseError(str(exc), vertices_line) from exc
    return name, graph


def parse_graph(text: str) -> CoxeterGraph:
    """Parse the graph text format."""
    _, graph = _parse(text, allow_name=False)
    return graph


def parse_axiom(text: str) -> tuple[str, CoxeterGraph]:
    """Parse an axiom file: (name, graph)."""
    name, graph = _parse(text, allow_name=True)
    assert name is not None
    return name, graph


def emit_graph(g: CoxeterGraph) -> str:
    lines = ["vertices: " + " ".join(g.vertices)]
    lines.extend(f"edge: {s} {t} {m}" for s, t, m in g.edges())
    return "\n".join(lines) + "\n"


def emit_axiom(name: str, g: CoxeterGraph) -> str:
    return f"name: {name}\n" + emit_graph(g)


def load_graph_file(path) -> CoxeterGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def load_axiom_file(path) -> tuple[str, CoxeterGraph]:
    with open(path, encoding="utf-8") as fh:
        return parse_axiom(fh.read())


def _dot_id(v: str) -> str:
    if v.isidentifier() or v.isalnum():
        return v
    return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: CoxeterGraph, name: str = "coxeter") -> str:
    """DOT text for an undirected graph with edge attribute label=m."""
    lines = [f"graph {_dot_id(name)} {{"]
    for v in g.vertices:
        lines.append(f"  {_dot_id(v)};")
    for s, t, m in g.edges():
        lines.append(f"  {_dot_id(s)} -- {_dot_id(t)} [label={m}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def quotient_to_dot(g: CoxeterGraph, p: Partition, name: str = "quotient") -> str:
    """DOT text for the quotient graph of an admissible partition.

    Each node shows the cell's members; each edge is labelled with its label
    and the witness edge that produced it.
    """
    q, witnesses = quotient(g, p)
    cell_by_name = {cell[0]: cell for cell in p.cells}
    lines = [f"graph {_dot_id(name)} {{"]
    for v in q.vertices:
        members = ",".join(cell_by_name[v])
        lines.append(f'  {_dot_id(v)} [label="{{{members}}}"];')
    for a, b, m in q.edges():
        s, t, _ = witnesses[(a, b)]
        lines.append(f'  {_dot_id(a)} -- {_dot_id(b)} [label="{m} ({s}-{t})"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_partition(text: str) -> Partition:
    """Parse a partition literal like ``{a,b|c|d,e}``."""
    stripped = text.strip()
    if not (stripped.startswith("{") and stripped.endswith("}")):
        raise ParseError(f"partition literal must be wrapped in braces: {text!r}")
    body = stripped[1:-1].strip()
    if not body:
        return Partition([])
    cells = []
    for chunk in body.split("|"):
        members = [v.strip() for v in chunk.split(",")]
        if any(not v for v in members):
            raise ParseError(f"empty vertex name in partition literal: {text!r}")
        cells.append(members)
    return Partition(cells)


def format_partition(p: Partition) -> str:
    return "{" + "|".join(",".join(cell) for cell in p.cells) + "}"
