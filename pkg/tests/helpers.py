"""Shared test oracles and utilities.

The oracles here are deliberately naive and independent of the production
code paths they check: brute-force set-partition generation, a cross-edge
counter, breadth-first components, an exhaustive triple scan, and free-monoid
word substitution.
"""

from __future__ import annotations

import dataclasses
import itertools
import string

from hypothesis import strategies as st

from artinrf.certificate import Amalgam, Base, FoldTo, FreeProduct, Kill
from artinrf.graph import CoxeterGraph
from artinrf.partition import Partition

LETTERS = string.ascii_lowercase


# --- oracles -----------------------------------------------------------------


def all_set_partitions(items):
    """Every partition of ``items`` as a list of lists (Bell-number many)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in all_set_partitions(rest):
        for i in range(len(smaller)):
            yield smaller[:i] + [[first] + smaller[i]] + smaller[i + 1 :]
        yield [[first]] + smaller


def naive_cross_edge_admissible(g: CoxeterGraph, cells) -> bool:
    """Count edges between every cell pair directly."""
    cells = [set(c) for c in cells]
    for a, b in itertools.combinations(cells, 2):
        count = sum(
            1
            for s, t, _ in g.edges()
            if (s in a and t in b) or (s in b and t in a)
        )
        if count > 1:
            return False
    return True


def brute_force_admissible(g: CoxeterGraph) -> set[Partition]:
    return {
        Partition(cells)
        for cells in all_set_partitions(g.vertices)
        if naive_cross_edge_admissible(g, cells)
    }


def bfs_components(g: CoxeterGraph) -> list[tuple[str, ...]]:
    remaining = set(g.vertices)
    out = []
    for v in g.vertices:
        if v not in remaining:
            continue
        comp, queue = {v}, [v]
        remaining.discard(v)
        while queue:
            u = queue.pop(0)
            for w in g.neighbors(u):
                if w in remaining:
                    remaining.discard(w)
                    comp.add(w)
                    queue.append(w)
        out.append(tuple(sorted(comp)))
    return sorted(out, key=lambda c: c[0])


def triple_scan_triangle_free(g: CoxeterGraph) -> bool:
    for a, b, c in itertools.combinations(g.vertices, 3):
        if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c):
            return False
    return True


def brute_maximal_cliques(g: CoxeterGraph) -> list[tuple[str, ...]]:
    verts = g.vertices
    cliques = []
    for r in range(1, len(verts) + 1):
        for combo in itertools.combinations(verts, r):
            if all(g.has_edge(a, b) for a, b in itertools.combinations(combo, 2)):
                cliques.append(set(combo))
    maximal = [
        tuple(sorted(c))
        for c in cliques
        if not any(c < other for other in cliques)
    ]
    return sorted(maximal)


def substitute_word(word, mapping):
    """Apply a generator->generator-or-None mapping, dropping identity letters."""
    return tuple(mapping[v] for v in word if mapping[v] is not None)


# --- graph/partition construction helpers ------------------------------------


def graph_from_labels(n: int, labels: dict[tuple[int, int], int]) -> CoxeterGraph:
    names = list(LETTERS[:n])
    return CoxeterGraph(
        names, [(names[i], names[j], m) for (i, j), m in labels.items()]
    )


def with_label(g: CoxeterGraph, s: str, t: str, m: int | None) -> CoxeterGraph:
    """Copy of ``g`` with the label of (s, t) set to ``m`` (None removes it)."""
    edges = [(a, b, k) for a, b, k in g.edges() if {a, b} != {s, t}]
    if m is not None:
        edges.append((s, t, m))
    return CoxeterGraph(g.vertices, edges)


# --- hypothesis strategies ----------------------------------------------------


@st.composite
def coxeter_graphs(
    draw, max_vertices=6, labels=(2, 3, 4, 5, 6, 7), min_vertices=0
):
    n = draw(st.integers(min_vertices, max_vertices))
    names = list(LETTERS[:n])
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                edges.append((names[i], names[j], draw(st.sampled_from(labels))))
    return CoxeterGraph(names, edges)


@st.composite
def even_coxeter_graphs(draw, max_vertices=6):
    return draw(coxeter_graphs(max_vertices=max_vertices, labels=(2, 4, 6)))


# --- certificate tree utilities ------------------------------------------------


def walk_nodes(cert, path="root"):
    yield path, cert
    if isinstance(cert, FreeProduct):
        for i, child in enumerate(cert.children):
            yield from walk_nodes(child, f"{path}.{i}")
    elif isinstance(cert, Amalgam):
        yield from walk_nodes(cert.child1, f"{path}.0")
        yield from walk_nodes(cert.child2, f"{path}.1")


def replace_node(cert, path, new_node, current="root"):
    """Rebuild the tree with the node at ``path`` replaced."""
    if path == current:
        return new_node
    if isinstance(cert, FreeProduct):
        children = tuple(
            replace_node(c, path, new_node, f"{current}.{i}")
            for i, c in enumerate(cert.children)
        )
        return dataclasses.replace(cert, children=children)
    if isinstance(cert, Amalgam):
        return dataclasses.replace(
            cert,
            child1=replace_node(cert.child1, path, new_node, f"{current}.0"),
            child2=replace_node(cert.child2, path, new_node, f"{current}.1"),
        )
    return cert


def count_nodes(cert, kind) -> int:
    return sum(1 for _, node in walk_nodes(cert) if isinstance(node, kind))


# --- mutation generation ---------------------------------------------------------


def breaking_mutations(g, cert, axioms=()):
    """Single-field mutations that each break one verifier-checked condition.

    Yields (description, graph, certificate, expected_condition).  Every
    candidate is pre-filtered so the named condition genuinely fails: witness
    swaps are kept only when the swapped witness is rejected, and tag
    relabels only pick recognizers that are false on the subject.
    """
    from artinrf.certificate import check_retraction
    from artinrf.graph import full_subgraph, label_isomorphism
    from artinrf.recognizers import (
        BaseKind,
        BaseTag,
        is_even_fc,
        is_right_angled,
        is_spherical,
    )

    for path, node in walk_nodes(cert):
        if isinstance(node, Amalgam):
            x0 = set(node.x0)
            sides = (
                ("1", set(node.x1), node.witness1),
                ("2", set(node.x2), node.witness2),
            )
            for which, side_set, witness in sides:
                condition = f"retraction-witness-{which}"
                if isinstance(witness, Kill):
                    sub = full_subgraph(g, side_set)
                    for s, t, m in sub.edges():
                        if (s in witness.victims) != (t in witness.victims) and m % 2 == 0:
                            yield (
                                f"kill-parity-flip {path} {s}-{t}",
                                with_label(g, s, t, m + 1),
                                cert,
                                condition,
                            )
                            break
                if isinstance(witness, FoldTo):
                    swapped = Kill(frozenset(side_set - x0), frozenset(side_set))
                else:
                    target = min(x0) if x0 else min(side_set)
                    swapped = FoldTo(target, frozenset(side_set))
                try:
                    still_valid = check_retraction(g, side_set, x0, swapped)
                except Exception:
                    still_valid = False
                if not still_valid:
                    field = "witness1" if which == "1" else "witness2"
                    mutated = dataclasses.replace(node, **{field: swapped})
                    yield (
                        f"witness-swap {path} #{which}",
                        g,
                        replace_node(cert, path, mutated),
                        condition,
                    )
            injected = False
            for u in sorted(set(node.x1) - x0):
                for v in sorted(set(node.x2) - x0):
                    if g.label(u, v) is None:
                        yield (
                            f"cross-edge-injection {path} {u}-{v}",
                            with_label(g, u, v, 2),
                            cert,
                            "amalgam-cross-edges",
                        )
                        injected = True
                        break
                if injected:
                    break
        elif isinstance(node, FreeProduct):
            if len(node.children) >= 2:
                corrupted = dataclasses.replace(node, children=node.children[:-1])
                yield (
                    f"component-drop {path}",
                    g,
                    replace_node(cert, path, corrupted),
                    "free-product-components",
                )
        elif isinstance(node, Base):
            sub = full_subgraph(g, node.subject)
            false_kinds = [
                kind
                for kind, holds in (
                    (BaseKind.SIZE_LEQ_TWO, len(sub) <= 2),
                    (BaseKind.RIGHT_ANGLED, is_right_angled(sub)),
                    (BaseKind.SPHERICAL, is_spherical(sub)),
                    (BaseKind.EVEN_FC, is_even_fc(sub)),
                )
                if kind is not node.tag.kind and not holds
            ]
            if not false_kinds and node.tag.kind is not BaseKind.USER_AXIOM:
                if not any(
                    label_isomorphism(sub, axiom_graph) is not None
                    for _, axiom_graph in axioms
                ):
                    false_kinds = [BaseKind.USER_AXIOM]
            if false_kinds:
                new_tag = BaseTag(false_kinds[0], node.tag.detail)
                yield (
                    f"tag-relabel {path} -> {false_kinds[0].value}",
                    g,
                    replace_node(cert, path, dataclasses.replace(node, tag=new_tag)),
                    "base-recognizer",
                )


__all__ = [name for name in dir() if not name.startswith("_")]
