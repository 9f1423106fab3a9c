"""Proof trees certifying residual finiteness, and the builders that make them.

A certificate is a tree of three node kinds.  Base leaves cite a trusted
recognizer.  FreeProduct nodes split a disconnected subject into its
connected components.  Amalgam nodes split the subject as an amalgamated
product of two vertex subsets over their intersection, carrying one
retraction witness per side; the witnesses make the semidirect-product
hypotheses of the amalgam criterion machine-checkable at the level of words
in the free monoid.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .graph import (
    CoxeterGraph,
    GraphError,
    connected_components,
    full_subgraph,
    is_even,
    is_forest,
    is_triangle_free,
    pi_word,
)
from .partition import (
    CONDITION_EVEN_TF,
    DEFAULT_BUDGET,
    BudgetExhausted,
    CertPlan,
    Partition,
    SearchContext,
    find_partition_plan,
    is_admissible,
    quotient,
    resolve_subject,
)
from .recognizers import BaseKind, BaseTag, base_rf

__all__ = [
    "CertificateError",
    "FoldTo",
    "Kill",
    "Witness",
    "Base",
    "FreeProduct",
    "Amalgam",
    "Certificate",
    "check_retraction",
    "build_vertex_amalgam",
    "build_even_tf",
    "build_forest",
    "CertifyResult",
    "certify_with_info",
    "certify",
]


class CertificateError(ValueError):
    """Builder precondition violation or malformed certificate structure."""


@dataclass(frozen=True)
class FoldTo:
    """Retraction witness sending every generator of ``domain`` to ``target``."""

    target: str
    domain: frozenset[str]


@dataclass(frozen=True)
class Kill:
    """Retraction witness sending ``victims`` to the identity, fixing the rest."""

    victims: frozenset[str]
    domain: frozenset[str]


Witness = Union[FoldTo, Kill]


def _witness_fixes(w: Witness, v: str) -> bool:
    if isinstance(w, FoldTo):
        return v == w.target
    return v not in w.victims


def _witness_image(w: Witness, v: str) -> str | None:
    """Image generator, or None for the identity."""
    if isinstance(w, FoldTo):
        return w.target
    return None if v in w.victims else v


def _witness_word(w: Witness, word: tuple[str, ...]) -> tuple[str, ...]:
    out = []
    for v in word:
        img = _witness_image(w, v)
        if img is not None:
            out.append(img)
    return tuple(out)


def check_retraction(g: CoxeterGraph, sub, target, w: Witness) -> bool:
    """Decide whether ``w`` defines a retraction of the inclusion of subgroups.

    True iff the witness fixes ``target`` pointwise, maps ``sub`` into
    ``target`` plus the identity, and sends every defining relation of the
    subgraph on ``sub`` to a word equation that holds trivially: either both
    sides become the same word of the free monoid after deleting identity
    letters, or the relation survives verbatim between two fixed generators
    and is therefore a defining relation of the target subgraph.
    """
    sub_set = frozenset(sub)
    target_set = frozenset(target)
    if not target_set <= sub_set:
        raise CertificateError("target must be a subset of sub")
    if not sub_set <= set(g.vertices):
        raise CertificateError("sub must be a subset of the graph's vertices")
    if w.domain != sub_set:
        raise CertificateError(
            f"witness domain {sorted(w.domain)!r} differs from sub {sorted(sub_set)!r}"
        )
    for v in target_set:
        if not _witness_fixes(w, v):
            return False
    for v in sub_set:
        img = _witness_image(w, v)
        if img is not None and img not in target_set:
            return False
    sub_graph = full_subgraph(g, sub_set)
    for s, t, m in sub_graph.edges():
        left = _witness_word(w, pi_word(s, t, m))
        right = _witness_word(w, pi_word(t, s, m))
        if left == right:
            continue
        if _witness_fixes(w, s) and _witness_fixes(w, t):
            continue
        return False
    return True


@dataclass(frozen=True)
class Base:
    subject: tuple[str, ...]
    tag: BaseTag


@dataclass(frozen=True)
class FreeProduct:
    subject: tuple[str, ...]
    children: tuple["Certificate", ...]


@dataclass(frozen=True)
class Amalgam:
    subject: tuple[str, ...]
    x1: tuple[str, ...]
    x2: tuple[str, ...]
    x0: tuple[str, ...]
    witness1: Witness
    witness2: Witness
    child1: "Certificate"
    child2: "Certificate"


Certificate = Union[Base, FreeProduct, Amalgam]

CertifyChild = Callable[[CoxeterGraph], Certificate]


def _size_leq_two_base(g: CoxeterGraph) -> Base:
    tag = base_rf(g)
    assert tag is not None and tag.kind is BaseKind.SIZE_LEQ_TWO
    return Base(g.vertices, tag)


def _fold_amalgam(
    g: CoxeterGraph,
    x1: set[str],
    x2: set[str],
    s: str,
    child1: Certificate,
    child2: Certificate,
) -> Amalgam:
    return Amalgam(
        subject=tuple(sorted(x1 | x2)),
        x1=tuple(sorted(x1)),
        x2=tuple(sorted(x2)),
        x0=(s,),
        witness1=FoldTo(s, frozenset(x1)),
        witness2=FoldTo(s, frozenset(x2)),
        child1=child1,
        child2=child2,
    )


def build_vertex_amalgam(g: CoxeterGraph, s: str, certify_child: CertifyChild) -> Certificate:
    """Split the subject over the single vertex ``s``.

    With components Y_1 < ... < Y_l of the graph minus ``s`` (ordered by
    least vertex), nests right-assorted amalgams over ``s`` with fold
    witnesses, recursing on the left side; the callback certifies each
    Y_i plus ``s``.  With at most one component the callback certifies the
    whole graph directly.
    """
    if s not in g:
        raise GraphError(f"unknown vertex: {s!r}")
    comps = connected_components(full_subgraph(g, [v for v in g.vertices if v != s]))
    if len(comps) <= 1:
        return certify_child(g)

    def nest(prefix: list[tuple[str, ...]]) -> Certificate:
        if len(prefix) == 1:
            return certify_child(full_subgraph(g, set(prefix[0]) | {s}))
        x2 = set(prefix[-1]) | {s}
        x1 = {s}
        for comp in prefix[:-1]:
            x1.update(comp)
        return _fold_amalgam(
            g, x1, x2, s, nest(prefix[:-1]), certify_child(full_subgraph(g, x2))
        )

    return nest(comps)


def _cross_edges(g: CoxeterGraph, a: set[str], b: set[str]) -> list[tuple[str, str, int]]:
    return [
        (s, t, m)
        for s, t, m in g.edges()
        if (s in a and t in b) or (s in b and t in a)
    ]


def _build_two_cells(g: CoxeterGraph, p: Partition, certify_cells: CertifyChild) -> Certificate:
    """Certificate for an admissible partition with at most two cells."""
    if len(g) <= 2:
        return _size_leq_two_base(g)
    if len(p) == 1:
        return certify_cells(g)
    cell_x, cell_y = p.cells
    xset, yset = set(cell_x), set(cell_y)
    cross = _cross_edges(g, xset, yset)
    if not cross:
        comps = {frozenset(c) for c in connected_components(g)}
        child_x = certify_cells(full_subgraph(g, xset))
        child_y = certify_cells(full_subgraph(g, yset))
        if comps == {frozenset(xset), frozenset(yset)}:
            return FreeProduct(g.vertices, (child_x, child_y))
        # Free product written as an amalgam over the trivial subgroup:
        # both kill-everything witnesses retract onto the empty subset.
        return Amalgam(
            subject=g.vertices,
            x1=cell_x,
            x2=cell_y,
            x0=(),
            witness1=Kill(frozenset(xset), frozenset(xset)),
            witness2=Kill(frozenset(yset), frozenset(yset)),
            child1=child_x,
            child2=child_y,
        )
    if len(cross) > 1:
        raise CertificateError("partition is not admissible: two cells share two edges")
    (e_s, e_t, _m) = cross[0]
    u, v = (e_s, e_t) if e_s in xset else (e_t, e_s)  # u in X, v in Y
    inner = yset | {u}
    if len(inner) <= 2:
        child2: Certificate = _size_leq_two_base(full_subgraph(g, inner))
    else:
        child2 = _fold_amalgam(
            g,
            yset,
            {u, v},
            v,
            certify_cells(full_subgraph(g, yset)),
            _size_leq_two_base(full_subgraph(g, {u, v})),
        )
    if len(xset) == 1:
        return child2
    return _fold_amalgam(g, xset, inner, u, certify_cells(full_subgraph(g, xset)), child2)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise CertificateError(message)


def build_even_tf(g: CoxeterGraph, p: Partition, certify_cells: CertifyChild) -> Certificate:
    """Certificate for an admissible partition with even triangle-free quotient.

    With more than two cells, picks the first non-adjacent quotient cell pair
    (X, Y) in canonical order and splits the subject as an amalgam of the two
    cell complements over their common part, with kill witnesses; recurses on
    the induced sub-partitions.  Two cells or fewer are handled directly.
    """
    _require(is_admissible(g, p), "partition is not admissible")
    q, _ = quotient(g, p)
    _require(is_even(q) and is_triangle_free(q), "quotient is not even and triangle free")
    if len(p) <= 2:
        return _build_two_cells(g, p, certify_cells)
    names = q.vertices
    pair = None
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            if q.label(a, b) is None:
                pair = (a, b)
                break
        if pair:
            break
    if pair is None:
        # A triangle-free graph on >= 3 vertices cannot be complete.
        raise CertificateError(
            "internal error: no non-adjacent cell pair in a triangle-free "
            "quotient with at least three cells"
        )
    by_name = {cell[0]: cell for cell in p.cells}
    cell_x, cell_y = by_name[pair[0]], by_name[pair[1]]
    sset = set(g.vertices)
    x1 = sset - set(cell_x)
    x2 = sset - set(cell_y)
    child1 = build_even_tf(
        full_subgraph(g, x1),
        Partition([c for c in p.cells if c != cell_x]),
        certify_cells,
    )
    child2 = build_even_tf(
        full_subgraph(g, x2),
        Partition([c for c in p.cells if c != cell_y]),
        certify_cells,
    )
    return Amalgam(
        subject=g.vertices,
        x1=tuple(sorted(x1)),
        x2=tuple(sorted(x2)),
        x0=tuple(sorted(x1 & x2)),
        witness1=Kill(frozenset(cell_y), frozenset(x1)),
        witness2=Kill(frozenset(cell_x), frozenset(x2)),
        child1=child1,
        child2=child2,
    )


def build_forest(g: CoxeterGraph, p: Partition, certify_cells: CertifyChild) -> Certificate:
    """Certificate for an admissible partition with forest quotient.

    A disconnected subject splits as a free product of its connected
    components, each with the induced partition.  A tree quotient with at
    least three cells picks the least cell X of valence >= 2 and its least
    neighbour Y; the unique connecting edge (s, t) with s in X splits the
    subject over s into the Y-side branch (plus s, as a new singleton cell)
    and the rest, both recursed with strictly smaller partitions.
    """
    _require(is_admissible(g, p), "partition is not admissible")
    q, witnesses = quotient(g, p)
    _require(is_forest(q), "quotient is not a forest")
    comps = connected_components(g)
    if len(comps) > 1:
        children = []
        for comp in comps:
            comp_set = set(comp)
            sub_cells = [
                [v for v in cell if v in comp_set]
                for cell in p.cells
                if any(v in comp_set for v in cell)
            ]
            children.append(
                build_forest(full_subgraph(g, comp), Partition(sub_cells), certify_cells)
            )
        return FreeProduct(g.vertices, tuple(children))
    if len(p) <= 2:
        return _build_two_cells(g, p, certify_cells)

    names = q.vertices
    hub = next((nm for nm in names if q.degree(nm) >= 2), None)
    _require(hub is not None, "internal error: tree quotient with >= 3 cells has no hub")
    neighbour = q.neighbors(hub)[0]
    key = (hub, neighbour) if hub < neighbour else (neighbour, hub)
    e_s, e_t, _m = witnesses[key]
    by_name = {cell[0]: cell for cell in p.cells}
    s = e_s if e_s in set(by_name[hub]) else e_t

    q_minus_hub = full_subgraph(q, [nm for nm in names if nm != hub])
    branch_q = next(c for c in connected_components(q_minus_hub) if neighbour in c)
    q_minus_nb = full_subgraph(q, [nm for nm in names if nm != neighbour])
    branch_r = next(c for c in connected_components(q_minus_nb) if hub in c)

    u_cells = [list(by_name[nm]) for nm in branch_q] + [[s]]
    u_set = {v for cell in u_cells for v in cell}
    v_cells = [list(by_name[nm]) for nm in branch_r]
    v_set = {v for cell in v_cells for v in cell}

    child1 = build_forest(full_subgraph(g, u_set), Partition(u_cells), certify_cells)
    child2 = build_forest(full_subgraph(g, v_set), Partition(v_cells), certify_cells)
    return _fold_amalgam(g, u_set, v_set, s, child1, child2)


# --- top-level certification -------------------------------------------------


@dataclass(frozen=True)
class CertifyResult:
    certificate: Certificate | None
    budget_exhausted: bool
    nodes_visited: int
    partition: Partition | None = None
    condition: str | None = None


class _Unbuildable(Exception):
    """A subject needed by a builder could not be certified."""


def _build_plan(ctx: SearchContext, sub_g: CoxeterGraph, plan: CertPlan) -> Certificate:
    def certify_cells(cell_g: CoxeterGraph) -> Certificate:
        resolution = resolve_subject(ctx, cell_g)
        if resolution is None:
            raise _Unbuildable(cell_g.vertices)
        if isinstance(resolution, BaseTag):
            return Base(cell_g.vertices, resolution)
        return _build_plan(ctx, cell_g, resolution)

    if plan.condition == CONDITION_EVEN_TF:
        return build_even_tf(sub_g, plan.partition, certify_cells)
    return build_forest(sub_g, plan.partition, certify_cells)


def certify_with_info(
    g: CoxeterGraph, axioms=(), budget: int = DEFAULT_BUDGET
) -> CertifyResult:
    """Search and build; reports budget exhaustion alongside the result."""
    if budget <= 0:
        raise ValueError(f"budget must be positive, got {budget!r}")
    ctx = SearchContext(axioms=tuple(axioms), budget=budget)
    try:
        plan = find_partition_plan(ctx, g)
        if plan is None:
            return CertifyResult(None, False, ctx.nodes_visited)
        cert = _build_plan(ctx, g, plan)
    except BudgetExhausted:
        return CertifyResult(None, True, ctx.nodes_visited)
    except _Unbuildable:
        return CertifyResult(None, False, ctx.nodes_visited)
    return CertifyResult(cert, False, ctx.nodes_visited, plan.partition, plan.condition)


def certify(g: CoxeterGraph, axioms=(), budget: int = DEFAULT_BUDGET) -> Certificate | None:
    """Certificate of residual finiteness, or None.

    None means unknown: the search space or budget was exhausted without a
    qualifying partition; it never asserts the group is not residually finite.
    """
    return certify_with_info(g, axioms, budget).certificate
