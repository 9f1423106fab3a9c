"""Coxeter graphs and Artin presentations.

A Coxeter graph is a finite set of vertices with symmetric integer edge
labels m >= 2.  A pair of vertices with no edge has label infinity; infinite
labels are represented by edge *absence* and are never stored.  Graphs are
immutable values: every decomposition returns a new graph, so structural
sharing across a memoized search is safe.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "GraphError",
    "CoxeterGraph",
    "Presentation",
    "full_subgraph",
    "connected_components",
    "is_even",
    "is_triangle_free",
    "is_forest",
    "pi_word",
    "artin_presentation",
    "label_isomorphism",
]

# Identifiers must survive the text format, DOT export and partition
# literals, so whitespace and the structural characters # { } | , are banned.
_ID_RE = re.compile(r"^[^\s#{}|,]+$")


class GraphError(ValueError):
    """Invalid graph construction or use."""


def _check_vertex_id(v: str) -> str:
    if not isinstance(v, str) or not _ID_RE.match(v):
        raise GraphError(f"invalid vertex identifier: {v!r}")
    return v


class CoxeterGraph:
    """Immutable labelled graph with integer labels >= 2.

    Vertices are opaque strings ordered lexicographically; all deterministic
    orders used by this package derive from that order.  Equality is
    label-exact and insensitive to construction order.
    """

    __slots__ = ("_vertices", "_adj", "_edges", "_hash")

    def __init__(self, vertices, edges=()):
        vs: list[str] = []
        seen: set[str] = set()
        for v in vertices:
            _check_vertex_id(v)
            if v in seen:
                raise GraphError(f"duplicate vertex: {v!r}")
            seen.add(v)
            vs.append(v)
        adj: dict[str, dict[str, int]] = {v: {} for v in sorted(vs)}
        for s, t, m in edges:
            if s not in seen or t not in seen:
                missing = s if s not in seen else t
                raise GraphError(f"edge endpoint not declared: {missing!r}")
            if s == t:
                raise GraphError(f"self-loop on vertex {s!r}")
            if not isinstance(m, int) or isinstance(m, bool) or m < 2:
                raise GraphError(f"edge label must be an integer >= 2, got {m!r}")
            old = adj[s].get(t)
            if old is not None and old != m:
                raise GraphError(
                    f"conflicting labels for pair ({s!r}, {t!r}): {old} and {m}"
                )
            adj[s][t] = m
            adj[t][s] = m
        self._vertices: tuple[str, ...] = tuple(sorted(vs))
        self._adj = adj
        self._edges: tuple[tuple[str, str, int], ...] = tuple(
            (s, t, adj[s][t]) for s in self._vertices for t in sorted(adj[s]) if s < t
        )
        self._hash = hash((self._vertices, self._edges))

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    def edges(self) -> tuple[tuple[str, str, int], ...]:
        """Edges as (s, t, m) with s < t, sorted."""
        return self._edges

    def label(self, s: str, t: str) -> int | None:
        """Stored label of the pair, or None when the label is infinite."""
        if s not in self._adj or t not in self._adj:
            raise GraphError(f"unknown vertex in pair ({s!r}, {t!r})")
        if s == t:
            raise GraphError(f"label of a vertex with itself is not stored: {s!r}")
        return self._adj[s].get(t)

    def has_edge(self, s: str, t: str) -> bool:
        return self.label(s, t) is not None

    def neighbors(self, s: str) -> tuple[str, ...]:
        if s not in self._adj:
            raise GraphError(f"unknown vertex: {s!r}")
        return tuple(sorted(self._adj[s]))

    def degree(self, s: str) -> int:
        return len(self._adj[s])

    def __contains__(self, v: str) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoxeterGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"CoxeterGraph(vertices={list(self._vertices)!r}, edges={list(self._edges)!r})"


def full_subgraph(g: CoxeterGraph, x) -> CoxeterGraph:
    """Full subgraph spanned by the vertex subset ``x``.

    Keeps exactly the labels of pairs inside ``x``.
    """
    xs = set(x)
    unknown = xs - set(g.vertices)
    if unknown:
        raise GraphError(f"unknown vertices in subset: {sorted(unknown)!r}")
    return CoxeterGraph(
        sorted(xs), [(s, t, m) for s, t, m in g.edges() if s in xs and t in xs]
    )


def connected_components(g: CoxeterGraph) -> list[tuple[str, ...]]:
    """Maximal connected vertex sets, each sorted, ordered by least vertex."""
    remaining = set(g.vertices)
    comps: list[tuple[str, ...]] = []
    for v in g.vertices:
        if v not in remaining:
            continue
        comp = {v}
        stack = [v]
        remaining.discard(v)
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w in remaining:
                    remaining.discard(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    comps.sort(key=lambda c: c[0])
    return comps


def is_even(g: CoxeterGraph) -> bool:
    """True when every stored label is even (infinite labels do not count)."""
    return all(m % 2 == 0 for _, _, m in g.edges())


def is_triangle_free(g: CoxeterGraph) -> bool:
    """True when no three distinct vertices are pairwise joined by edges."""
    for s, t, _ in g.edges():
        common = set(g.neighbors(s)) & set(g.neighbors(t))
        if common:
            return False
    return True


def is_forest(g: CoxeterGraph) -> bool:
    """True when the underlying unlabelled graph is acyclic."""
    # A graph is a forest iff every component has exactly |C| - 1 edges.
    edge_count = len(g.edges())
    comp_count = len(connected_components(g))
    return edge_count == len(g) - comp_count


@dataclass(frozen=True)
class Presentation:
    """Artin presentation: generators plus one braid relation per edge.

    Each relation is a pair of positive words of equal length m that
    alternate strictly between the two generators of an edge.
    """

    generators: tuple[str, ...]
    relations: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...]


def pi_word(a: str, b: str, m: int) -> tuple[str, ...]:
    """The alternating word a b a b ... of length m."""
    if m < 2:
        raise GraphError(f"alternating word needs length >= 2, got {m}")
    return tuple(a if i % 2 == 0 else b for i in range(m))


def artin_presentation(g: CoxeterGraph) -> Presentation:
    """Braid-style presentation of the Artin group of ``g``.

    One relation per finite-labelled edge; the side starting with the
    lesser vertex comes first.
    """
    rels = tuple((pi_word(s, t, m), pi_word(t, s, m)) for s, t, m in g.edges())
    return Presentation(generators=g.vertices, relations=rels)


def label_isomorphism(g: CoxeterGraph, h: CoxeterGraph) -> dict[str, str] | None:
    """A label-preserving vertex bijection g -> h, or None.

    Preserves labels of *all* pairs, including absent (infinite) ones.
    Backtracking with degree/label-multiset pruning; intended for desk-scale
    graphs (at most a dozen vertices).
    """
    if len(g) != len(h) or len(g.edges()) != len(h.edges()):
        return None

    def signature(graph: CoxeterGraph, v: str) -> tuple:
        return tuple(sorted(graph.label(v, u) for u in graph.neighbors(v)))

    sig_g = {v: signature(g, v) for v in g.vertices}
    sig_h = {v: signature(h, v) for v in h.vertices}
    if sorted(sig_g.values()) != sorted(sig_h.values()):
        return None

    # Most-constrained-first: rare signatures early.
    order = sorted(g.vertices, key=lambda v: (sorted(sig_g.values()).count(sig_g[v]), v))
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in h.vertices:
            if w in used or sig_h[w] != sig_g[v]:
                continue
            ok = True
            for v2, w2 in mapping.items():
                if g.label(v, v2) != h.label(w, w2):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return dict(mapping) if extend(0) else None
