"""Independent re-validation of certificates.

Every condition checked here is a hypothesis of the amalgam criterion, of
the two-generator base case, or of one of the trusted base families.  The
checks use only the graph primitives, the recognizers and the word-level
retraction check; none of the builder or search machinery is involved, so a
certificate produced elsewhere is judged purely on its own content.

One deliberate trust point is recorded per amalgam node: that the two factor
subgroups intersect exactly in the subgroup generated by the shared vertices.
This is the standard parabolic-subgroup property of Artin groups; it is
cited, not re-proved.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certificate import (
    Amalgam,
    Base,
    Certificate,
    FoldTo,
    FreeProduct,
    Kill,
    check_retraction,
)
from .graph import CoxeterGraph, full_subgraph, label_isomorphism
from .recognizers import BaseKind, is_even_fc, is_right_angled, is_spherical

__all__ = ["TraceEntry", "VerifyReport", "verify"]


@dataclass(frozen=True)
class TraceEntry:
    path: str
    condition: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class VerifyReport:
    overall: bool
    trace: tuple[TraceEntry, ...]

    def failures(self) -> tuple[TraceEntry, ...]:
        return tuple(e for e in self.trace if not e.passed)


def _subject_ok(g: CoxeterGraph, subject) -> tuple[bool, str]:
    if not isinstance(subject, tuple):
        return False, "subject is not a tuple"
    if list(subject) != sorted(set(subject)):
        return False, f"subject is not a sorted duplicate-free tuple: {subject!r}"
    stray = [v for v in subject if v not in g]
    if stray:
        return False, f"subject contains unknown vertices: {stray!r}"
    return True, f"subject of size {len(subject)}"


def _check_base(g: CoxeterGraph, node: Base, axioms) -> tuple[bool, str]:
    sub = full_subgraph(g, node.subject)
    kind = node.tag.kind
    if kind is BaseKind.SIZE_LEQ_TWO:
        return len(sub) <= 2, f"subject has {len(sub)} vertices"
    if kind is BaseKind.RIGHT_ANGLED:
        return is_right_angled(sub), "all labels must equal 2"
    if kind is BaseKind.SPHERICAL:
        return is_spherical(sub), "subject must be of spherical type"
    if kind is BaseKind.EVEN_FC:
        return is_even_fc(sub), "subject must be even of FC type"
    if kind is BaseKind.USER_AXIOM:
        for name, axiom_graph in axioms:
            if label_isomorphism(sub, axiom_graph) is not None:
                return True, f"isomorphic to axiom {name!r}"
        return False, "no declared axiom is isomorphic to the subject"
    return False, f"unknown base kind {kind!r}"


def _witness_desc(w) -> str:
    if isinstance(w, FoldTo):
        return f"fold onto {w.target!r}"
    if isinstance(w, Kill):
        return f"kill {sorted(w.victims)!r}"
    return repr(w)


def verify(g: CoxeterGraph, cert: Certificate, axioms=()) -> VerifyReport:
    """Re-check every side condition of a certificate against the graph.

    Failures never raise; each condition becomes one trace entry and the
    report is the conjunction.  Entries appear in depth-first node-path
    order, children in index order.
    """
    trace: list[TraceEntry] = []

    def record(path: str, condition: str, passed: bool, detail: str) -> None:
        trace.append(TraceEntry(path, condition, bool(passed), detail))

    def walk(node: Certificate, path: str) -> None:
        ok, detail = _subject_ok(g, getattr(node, "subject", None))
        record(path, "subject-bounds", ok, detail)
        if not ok:
            return
        subject_set = set(node.subject)

        if isinstance(node, Base):
            try:
                passed, detail = _check_base(g, node, axioms)
            except Exception as exc:  # malformed tag content
                passed, detail = False, f"recognizer check raised: {exc}"
            record(path, "base-recognizer", passed, f"{node.tag.kind.value}: {detail}")
            return

        if isinstance(node, FreeProduct):
            comps = {
                frozenset(c)
                for c in _components_of(full_subgraph(g, node.subject))
            }
            child_subjects = [set(ch.subject) for ch in node.children]
            exact = {frozenset(cs) for cs in child_subjects} == comps and len(
                child_subjects
            ) == len(comps)
            record(
                path,
                "free-product-components",
                exact,
                f"{len(node.children)} children vs {len(comps)} connected components",
            )
            for i, child in enumerate(node.children):
                walk(child, f"{path}.{i}")
            return

        if isinstance(node, Amalgam):
            x1, x2, x0 = set(node.x1), set(node.x2), set(node.x0)
            record(
                path,
                "amalgam-union",
                x1 | x2 == subject_set,
                "x1 + x2 must cover the subject exactly",
            )
            record(
                path,
                "amalgam-intersection",
                x1 & x2 == x0,
                f"x1 and x2 must intersect exactly in x0 = {sorted(x0)!r}",
            )
            cross = [
                (s, t)
                for s, t, _ in full_subgraph(g, node.subject).edges()
                if (s in x1 - x0 and t in x2 - x0) or (s in x2 - x0 and t in x1 - x0)
            ]
            record(
                path,
                "amalgam-cross-edges",
                not cross,
                "no edge may join x1 - x0 to x2 - x0"
                + (f"; found {cross!r}" if cross else ""),
            )
            record(
                path,
                "amalgam-child-subjects",
                tuple(node.child1.subject) == node.x1
                and tuple(node.child2.subject) == node.x2,
                "child subjects must be x1 and x2 respectively",
            )
            for label, side, witness in (
                ("1", node.x1, node.witness1),
                ("2", node.x2, node.witness2),
            ):
                side_set = set(side)
                domain_ok = getattr(witness, "domain", None) == frozenset(side_set)
                record(
                    path,
                    f"witness-domain-{label}",
                    domain_ok,
                    f"witness {label} domain must equal x{label}",
                )
                if domain_ok:
                    try:
                        passed = check_retraction(g, side_set, x0, witness)
                        detail = f"{_witness_desc(witness)} onto {sorted(x0)!r}"
                    except Exception as exc:
                        passed, detail = False, f"retraction check raised: {exc}"
                else:
                    passed, detail = False, "skipped: domain mismatch"
                record(path, f"retraction-witness-{label}", passed, detail)
            record(
                path,
                "amalgam-parabolic-intersection",
                True,
                "trusted: the factors intersect in the subgroup generated by x0 "
                "(standard parabolic subgroup property, cited not re-proved)",
            )
            walk(node.child1, f"{path}.0")
            walk(node.child2, f"{path}.1")
            return

        record(path, "node-kind", False, f"unknown node type {type(node).__name__!r}")

    ok, detail = _subject_ok(g, getattr(cert, "subject", None))
    coverage = ok and set(cert.subject) == set(g.vertices)
    record(
        "root",
        "subject-coverage",
        coverage,
        "root subject must equal the graph's vertex set",
    )
    walk(cert, "root")
    return VerifyReport(all(e.passed for e in trace), tuple(trace))


def _components_of(g: CoxeterGraph):
    # Local breadth-first search: the verifier keeps its own component logic
    # so that a defect in the shared helper cannot hide in both builder and
    # checker at once.
    remaining = set(g.vertices)
    comps = []
    for v in g.vertices:
        if v not in remaining:
            continue
        comp = {v}
        queue = [v]
        remaining.discard(v)
        while queue:
            u = queue.pop(0)
            for w in g.neighbors(u):
                if w in remaining:
                    remaining.discard(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))
    return comps
