"""Admissible partitions, quotient graphs, and the certifying search.

A partition of the vertex set is admissible when at most one edge connects
any two distinct cells.  An admissible partition induces a quotient Coxeter
graph whose edge labels come from the unique connecting edges.  The search
looks for an admissible partition whose quotient is either even and triangle
free or a forest, and whose cells are all certifiable (by a base recognizer
or recursively).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from .graph import CoxeterGraph, full_subgraph, is_even, is_forest, is_triangle_free
from .recognizers import BaseTag, base_rf

__all__ = [
    "PartitionError",
    "Partition",
    "singleton_partition",
    "is_admissible",
    "quotient",
    "enumerate_admissible",
    "CONDITION_EVEN_TF",
    "CONDITION_FOREST",
    "CertPlan",
    "SearchOutcome",
    "DEFAULT_BUDGET",
    "find_certifying_partition",
]

DEFAULT_BUDGET = 1_000_000

CONDITION_EVEN_TF = "even-triangle-free"
CONDITION_FOREST = "forest"


class PartitionError(ValueError):
    """Invalid partition construction or use."""


class Partition:
    """Nonempty, pairwise-disjoint vertex cells in canonical form.

    Each cell is sorted and cells are ordered by least element.  Coverage of
    an ambient vertex set is checked where a graph is involved, not here.
    """

    __slots__ = ("_cells", "_index")

    def __init__(self, cells):
        norm: list[tuple[str, ...]] = []
        index: dict[str, int] = {}
        for cell in cells:
            members = tuple(sorted(cell))
            if not members:
                raise PartitionError("empty cell")
            norm.append(members)
        norm.sort(key=lambda c: c[0])
        for i, cell in enumerate(norm):
            if len(set(cell)) != len(cell):
                raise PartitionError(f"repeated vertex inside a cell: {cell!r}")
            for v in cell:
                if v in index:
                    raise PartitionError(f"vertex {v!r} appears in two cells")
                index[v] = i
        self._cells: tuple[tuple[str, ...], ...] = tuple(norm)
        self._index = index

    @property
    def cells(self) -> tuple[tuple[str, ...], ...]:
        return self._cells

    def cell_index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise PartitionError(f"vertex {v!r} is in no cell") from None

    def vertex_set(self) -> frozenset[str]:
        return frozenset(self._index)

    def __len__(self) -> int:
        return len(self._cells)

    def __iter__(self):
        return iter(self._cells)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self._cells == other._cells

    def __hash__(self) -> int:
        return hash(self._cells)

    def __repr__(self) -> str:
        body = "|".join(",".join(cell) for cell in self._cells)
        return f"Partition({{{body}}})"


def singleton_partition(g: CoxeterGraph) -> Partition:
    return Partition([[v] for v in g.vertices])


def _check_partition_of(g: CoxeterGraph, p: Partition) -> None:
    if p.vertex_set() != frozenset(g.vertices):
        raise PartitionError(
            f"partition covers {sorted(p.vertex_set())!r}, "
            f"graph has vertices {list(g.vertices)!r}"
        )


def is_admissible(g: CoxeterGraph, p: Partition) -> bool:
    """True iff every pair of distinct cells is joined by at most one edge."""
    _check_partition_of(g, p)
    counts: dict[tuple[int, int], int] = {}
    for s, t, _ in g.edges():
        ci, cj = p.cell_index(s), p.cell_index(t)
        if ci == cj:
            continue
        key = (ci, cj) if ci < cj else (cj, ci)
        counts[key] = counts.get(key, 0) + 1
        if counts[key] > 1:
            return False
    return True


def quotient(
    g: CoxeterGraph, p: Partition
) -> tuple[CoxeterGraph, dict[tuple[str, str], tuple[str, str, int]]]:
    """Quotient graph plus the witness-edge index.

    The quotient has one vertex per cell, named by the cell's least element.
    Two cells are joined iff a (necessarily unique) edge of ``g`` connects
    them; the quotient edge carries that edge's label and the returned index
    maps the sorted cell-name pair to the witness edge (s, t, m).
    """
    _check_partition_of(g, p)
    names = [cell[0] for cell in p.cells]
    witnesses: dict[tuple[str, str], tuple[str, str, int]] = {}
    qedges: list[tuple[str, str, int]] = []
    for s, t, m in g.edges():
        ci, cj = p.cell_index(s), p.cell_index(t)
        if ci == cj:
            continue
        a, b = names[ci], names[cj]
        key = (a, b) if a < b else (b, a)
        if key in witnesses:
            raise PartitionError(
                f"inadmissible partition: cells {key[0]!r} and {key[1]!r} are "
                "joined by more than one edge, so the quotient label is ill-defined"
            )
        witnesses[key] = (s, t, m)
        qedges.append((key[0], key[1], m))
    return CoxeterGraph(names, qedges), witnesses


def enumerate_admissible(g: CoxeterGraph) -> Iterator[Partition]:
    """All admissible partitions, each exactly once, in restricted-growth-string order.

    Vertices are taken in sorted order; vertex i may join cell 0..max+1.
    A partial assignment is pruned as soon as some cell pair already carries
    two cross edges, which can never be repaired by later placements.
    """
    verts = list(g.vertices)
    n = len(verts)
    if n == 0:
        yield Partition([])
        return
    pos = {v: i for i, v in enumerate(verts)}
    prior_nbrs: list[list[int]] = [[] for _ in range(n)]
    for s, t, _ in g.edges():
        i, j = pos[s], pos[t]
        if i > j:
            i, j = j, i
        prior_nbrs[j].append(i)
    assign = [0] * n
    cross: dict[tuple[int, int], int] = {}

    def place(i: int, c: int) -> tuple[list[tuple[int, int]], bool]:
        added: list[tuple[int, int]] = []
        for j in prior_nbrs[i]:
            cj = assign[j]
            if cj == c:
                continue
            key = (cj, c) if cj < c else (c, cj)
            cnt = cross.get(key, 0) + 1
            cross[key] = cnt
            added.append(key)
            if cnt > 1:
                return added, False
        return added, True

    def unplace(added: list[tuple[int, int]]) -> None:
        for key in added:
            cnt = cross[key] - 1
            if cnt:
                cross[key] = cnt
            else:
                del cross[key]

    def walk(i: int, ncells: int) -> Iterator[Partition]:
        if i == n:
            cells: list[list[str]] = [[] for _ in range(ncells)]
            for v, c in zip(verts, assign):
                cells[c].append(v)
            yield Partition(cells)
            return
        for c in range(ncells + 1):
            assign[i] = c
            added, ok = place(i, c)
            if ok:
                yield from walk(i + 1, max(ncells, c + 1))
            unplace(added)

    yield from walk(0, 0)


# --- certifying search ------------------------------------------------------


CellPlan = Union[BaseTag, "CertPlan"]


@dataclass(frozen=True)
class CertPlan:
    """An admissible partition together with how each cell is certified."""

    partition: Partition
    condition: str  # CONDITION_EVEN_TF or CONDITION_FOREST
    cell_plans: dict[tuple[str, ...], CellPlan]


@dataclass(frozen=True)
class SearchOutcome:
    plan: CertPlan | None
    budget_exhausted: bool
    nodes_visited: int


class BudgetExhausted(Exception):
    """Internal: the partition-node budget ran out mid-search."""


@dataclass
class SearchContext:
    """Shared state for one certification run.

    ``budget`` counts complete admissible partitions examined, across all
    recursion depths.  Subject resolutions are memoized by vertex set, which
    is sound because a full subgraph is determined by its vertex set.
    """

    axioms: tuple[tuple[str, CoxeterGraph], ...] = ()
    budget: int = DEFAULT_BUDGET
    nodes_visited: int = 0
    memo: dict[frozenset[str], CellPlan | None] = field(default_factory=dict)
    in_progress: set[frozenset[str]] = field(default_factory=set)

    def charge(self) -> None:
        if self.budget <= 0:
            raise BudgetExhausted
        self.budget -= 1
        self.nodes_visited += 1


def quotient_condition(q: CoxeterGraph) -> str | None:
    """Which branch of the decomposition criterion the quotient satisfies.

    Preference order: even-and-triangle-free first, then forest.
    """
    if is_even(q) and is_triangle_free(q):
        return CONDITION_EVEN_TF
    if is_forest(q):
        return CONDITION_FOREST
    return None


def resolve_subject(ctx: SearchContext, sub_g: CoxeterGraph) -> CellPlan | None:
    """Certify a subject graph: base recognizer first, else partition search."""
    key = frozenset(sub_g.vertices)
    if key in ctx.memo:
        return ctx.memo[key]
    if key in ctx.in_progress:
        return None
    tag = base_rf(sub_g, ctx.axioms)
    result: CellPlan | None = tag if tag is not None else find_partition_plan(ctx, sub_g)
    ctx.memo[key] = result
    return result


def find_partition_plan(ctx: SearchContext, g: CoxeterGraph) -> CertPlan | None:
    """First admissible partition whose quotient and cells both qualify.

    The all-singletons partition is tried first (it decides the two direct
    corollary classes in one quotient check), then every admissible partition
    in restricted-growth-string order.  A cell equal to the whole vertex set
    must match a base recognizer; smaller cells may recurse.
    """
    key = frozenset(g.vertices)
    ctx.in_progress.add(key)
    try:
        singleton = singleton_partition(g)

        def candidates() -> Iterator[Partition]:
            yield singleton
            for p in enumerate_admissible(g):
                if p != singleton:
                    yield p

        whole = tuple(g.vertices)
        for p in candidates():
            ctx.charge()
            q, _ = quotient(g, p)
            condition = quotient_condition(q)
            if condition is None:
                continue
            cell_plans: dict[tuple[str, ...], CellPlan] = {}
            ok = True
            for cell in p.cells:
                if cell == whole:
                    plan: CellPlan | None = base_rf(g, ctx.axioms)
                else:
                    plan = resolve_subject(ctx, full_subgraph(g, cell))
                if plan is None:
                    ok = False
                    break
                cell_plans[cell] = plan
            if ok:
                return CertPlan(p, condition, cell_plans)
        return None
    finally:
        ctx.in_progress.discard(key)


def find_certifying_partition(
    g: CoxeterGraph, axioms=(), budget: int = DEFAULT_BUDGET
) -> SearchOutcome:
    """Search for a partition satisfying the decomposition criterion.

    Returns the first qualifying plan in deterministic order, or nothing;
    exhaustion of the node budget is reported on the outcome, never raised.
    """
    if budget <= 0:
        raise ValueError(f"budget must be positive, got {budget!r}")
    ctx = SearchContext(axioms=tuple(axioms), budget=budget)
    try:
        plan = find_partition_plan(ctx, g)
    except BudgetExhausted:
        return SearchOutcome(None, True, ctx.nodes_visited)
    return SearchOutcome(plan, False, ctx.nodes_visited)
