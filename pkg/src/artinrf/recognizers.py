"""Recognizers for Artin groups already known to be residually finite.

These families are trusted citations, never re-proved here: graphs with at
most two vertices, right-angled graphs, graphs of spherical type (finite
Coxeter group), even graphs of FC type, and user-declared axiom graphs.
A matching recognizer becomes a Base leaf of a certificate.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .graph import (
    CoxeterGraph,
    full_subgraph,
    is_even,
    label_isomorphism,
)

__all__ = [
    "BaseKind",
    "BaseTag",
    "spherical_components",
    "is_spherical",
    "gram_matrix",
    "gram_positive_definite",
    "is_right_angled",
    "maximal_cliques",
    "is_even_fc",
    "base_rf",
]


class BaseKind(enum.Enum):
    SIZE_LEQ_TWO = "SizeLeqTwo"
    RIGHT_ANGLED = "RightAngled"
    SPHERICAL = "SphericalType"
    EVEN_FC = "EvenFC"
    USER_AXIOM = "UserAxiom"


@dataclass(frozen=True)
class BaseTag:
    kind: BaseKind
    detail: str


# --- spherical type -------------------------------------------------------
#
# The Coxeter group is finite iff no pair has an infinite label (otherwise it
# contains an infinite dihedral subgroup) and every component of the diagram
# spanned by labels >= 3 is one of the classical finite types.  Label-2 edges
# act as "commuting" separators: they split the diagram into irreducible
# factors (type A1 x A1 and so on).


def _classify_irreducible(comp: tuple[str, ...], adj: dict[str, dict[str, int]]) -> str | None:
    """Finite-type name of one component of the label->=3 diagram, or None."""
    n = len(comp)
    if n == 1:
        return "A1"
    degs = {v: len(adj[v]) for v in comp}
    edge_count = sum(degs.values()) // 2
    if edge_count != n - 1:
        return None  # has a cycle
    if max(degs.values()) > 3:
        return None
    branch = sorted(v for v in comp if degs[v] == 3)
    if len(branch) > 1:
        return None

    if not branch:
        # A path.  Read labels from the lesser endpoint.
        ends = sorted(v for v in comp if degs[v] == 1)
        prev, cur = None, ends[0]
        labels: list[int] = []
        while True:
            nxt = [u for u in sorted(adj[cur]) if u != prev]
            if not nxt:
                break
            labels.append(adj[cur][nxt[0]])
            prev, cur = cur, nxt[0]
        if n == 2:
            m = labels[0]
            return {3: "A2", 4: "B2", 6: "G2"}.get(m, f"I2({m})")
        big = [m for m in labels if m != 3]
        if not big:
            return f"A{n}"
        if len(big) > 1:
            return None
        m = big[0]
        at_end = labels[0] == m or labels[-1] == m
        if m == 4:
            if at_end:
                return f"B{n}"
            if n == 4 and labels[1] == 4:
                return "F4"
            return None
        if m == 5 and at_end:
            if n == 3:
                return "H3"
            if n == 4:
                return "H4"
        return None

    # One degree-3 vertex: types D and E, all labels must equal 3.
    if any(m != 3 for v in comp for m in adj[v].values()):
        return None
    b = branch[0]
    arm_lengths = []
    for start in sorted(adj[b]):
        length, prev, cur = 1, b, start
        while len(adj[cur]) == 2:
            nxt = [u for u in adj[cur] if u != prev][0]
            prev, cur = cur, nxt
            length += 1
        arm_lengths.append(length)
    arms = tuple(sorted(arm_lengths))
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    return {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}.get(arms)


def spherical_components(g: CoxeterGraph) -> list[str] | None:
    """Sorted irreducible finite-type names, or None if the Coxeter group is infinite."""
    verts = g.vertices
    for i, s in enumerate(verts):
        for t in verts[i + 1 :]:
            if g.label(s, t) is None:
                return None
    adj: dict[str, dict[str, int]] = {v: {} for v in verts}
    for s, t, m in g.edges():
        if m >= 3:
            adj[s][t] = m
            adj[t][s] = m
    types: list[str] = []
    remaining = set(verts)
    for v in verts:
        if v not in remaining:
            continue
        comp = {v}
        stack = [v]
        remaining.discard(v)
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in remaining:
                    remaining.discard(w)
                    comp.add(w)
                    stack.append(w)
        name = _classify_irreducible(tuple(sorted(comp)), adj)
        if name is None:
            return None
        types.append(name)
    return sorted(types)


def is_spherical(g: CoxeterGraph) -> bool:
    """True iff the associated Coxeter group is finite."""
    return spherical_components(g) is not None


def gram_matrix(g: CoxeterGraph) -> np.ndarray:
    """Cosine matrix: 1 on the diagonal, -cos(pi/m) off it, -1 for infinite labels."""
    verts = g.vertices
    n = len(verts)
    mat = np.eye(n)
    for i, s in enumerate(verts):
        for j in range(i + 1, n):
            m = g.label(s, verts[j])
            val = -1.0 if m is None else -math.cos(math.pi / m)
            mat[i, j] = mat[j, i] = val
    return mat


def gram_positive_definite(g: CoxeterGraph, tol: float) -> bool:
    """Leading-principal-minor test on the cosine matrix.

    Independent numeric cross-check for :func:`is_spherical`; the production
    path never uses it.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol!r}")
    mat = gram_matrix(g)
    for k in range(1, len(g) + 1):
        if np.linalg.det(mat[:k, :k]) <= tol:
            return False
    return True


def is_right_angled(g: CoxeterGraph) -> bool:
    """True iff every stored label equals 2."""
    return all(m == 2 for _, _, m in g.edges())


def maximal_cliques(g: CoxeterGraph) -> list[tuple[str, ...]]:
    """Maximal cliques of the finite-label graph, via pivoting Bron-Kerbosch."""
    if not g.vertices:
        return []
    nbrs = {v: set(g.neighbors(v)) for v in g.vertices}
    out: list[tuple[str, ...]] = []

    def expand(r: set[str], p: set[str], x: set[str]) -> None:
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(sorted(p | x), key=lambda u: len(p & nbrs[u]))
        for v in sorted(p - nbrs[pivot]):
            expand(r | {v}, p & nbrs[v], x & nbrs[v])
            p.remove(v)
            x.add(v)

    expand(set(), set(g.vertices), set())
    return sorted(out)


def is_even_fc(g: CoxeterGraph) -> bool:
    """True iff the graph is even and of FC type.

    The subsets that must span spherical subgraphs are exactly the cliques of
    the finite-label graph, and sphericity is hereditary under full subgraphs,
    so checking maximal cliques suffices.
    """
    if not is_even(g):
        return False
    return all(is_spherical(full_subgraph(g, c)) for c in maximal_cliques(g))


def _size_leq_two_detail(g: CoxeterGraph) -> str:
    n = len(g)
    if n == 0:
        return "empty generating set (trivial group)"
    if n == 1:
        return "single generator (infinite cyclic group)"
    s, t = g.vertices
    m = g.label(s, t)
    if m is None:
        return "free group of rank 2"
    return f"two generators with label {m} (dihedral-type Artin group, linear)"


def base_rf(g: CoxeterGraph, axioms=()) -> BaseTag | None:
    """First matching recognizer tag, or None.

    Priority order: SizeLeqTwo, RightAngled, SphericalType, EvenFC, UserAxiom.
    ``axioms`` is a sequence of (name, graph) pairs matched by label-preserving
    isomorphism.
    """
    if len(g) <= 2:
        return BaseTag(BaseKind.SIZE_LEQ_TWO, _size_leq_two_detail(g))
    if is_right_angled(g):
        return BaseTag(BaseKind.RIGHT_ANGLED, "all labels equal 2 (right-angled)")
    types = spherical_components(g)
    if types is not None:
        return BaseTag(BaseKind.SPHERICAL, "finite Coxeter type " + " x ".join(types))
    if is_even_fc(g):
        return BaseTag(
            BaseKind.EVEN_FC,
            "even labels, every maximal clique spans a spherical subgraph (FC type)",
        )
    for name, axiom_graph in axioms:
        mapping = label_isomorphism(g, axiom_graph)
        if mapping is not None:
            rendered = " ".join(f"{a}->{b}" for a, b in sorted(mapping.items()))
            return BaseTag(BaseKind.USER_AXIOM, f"matches axiom {name!r} via {rendered}")
    return None
