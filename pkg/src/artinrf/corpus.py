"""Seeded random graph generators for testing and the gen-corpus command.

Every generator takes an explicit random.Random instance; no global entropy
is used anywhere, so corpora are reproducible from a seed.  Generated kinds
satisfy their defining predicate by construction: forests attach each new
vertex to at most one earlier vertex, and the even triangle-free kind only
places even labels across a bipartition.
"""

from __future__ import annotations

import random
import string

from .graph import CoxeterGraph

__all__ = [
    "vertex_names",
    "random_forest",
    "random_even_triangle_free",
    "random_graph",
    "generate",
    "KINDS",
]

FOREST_LABELS = (2, 3, 4, 5, 6, 7)
EVEN_LABELS = (2, 4, 6)


def vertex_names(n: int) -> list[str]:
    if n <= 26:
        return list(string.ascii_lowercase[:n])
    return [f"v{i:02d}" for i in range(n)]


def random_forest(
    rng: random.Random, n: int, labels=FOREST_LABELS, isolate_prob: float = 0.2
) -> CoxeterGraph:
    """Random labelled forest: vertex i attaches to one earlier vertex or none."""
    names = vertex_names(n)
    edges = []
    for i in range(1, n):
        if rng.random() < isolate_prob:
            continue
        parent = rng.randrange(i)
        edges.append((names[parent], names[i], rng.choice(labels)))
    return CoxeterGraph(names, edges)


def random_even_triangle_free(
    rng: random.Random, n: int, labels=EVEN_LABELS, edge_prob: float = 0.45
) -> CoxeterGraph:
    """Random bipartite graph with even labels; bipartite implies triangle free."""
    names = vertex_names(n)
    side = [rng.random() < 0.5 for _ in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if side[i] != side[j] and rng.random() < edge_prob:
                edges.append((names[i], names[j], rng.choice(labels)))
    return CoxeterGraph(names, edges)


def random_graph(
    rng: random.Random, n: int, labels=FOREST_LABELS, edge_prob: float = 0.35
) -> CoxeterGraph:
    """Unconstrained random graph; absent pairs keep an infinite label."""
    names = vertex_names(n)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_prob:
                edges.append((names[i], names[j], rng.choice(labels)))
    return CoxeterGraph(names, edges)


KINDS = {
    "forest": random_forest,
    "even-tf": random_even_triangle_free,
    "random": random_graph,
}


def generate(kind: str, n: int, count: int, seed: int) -> list[CoxeterGraph]:
    """Deterministic batch of graphs of the given kind."""
    if kind not in KINDS:
        raise ValueError(f"unknown corpus kind {kind!r}; choose from {sorted(KINDS)}")
    if n < 1 or count < 1:
        raise ValueError("n and count must both be at least 1")
    rng = random.Random(seed)
    return [KINDS[kind](rng, n) for _ in range(count)]
