"""Acyclicity by vertex/edge reduction, and checks of its homological consequences.

The reductions are

* ``O1``  delete a vertex lying in exactly one hyperedge from that hyperedge;
* ``O1'`` the same, but only when that hyperedge has at least two vertices;
* ``O2``  delete a hyperedge strictly contained in another.

A hyperedge that loses its last vertex disappears, and hyperedges that become
equal merge.  Candidates are taken in canonical order with ``O2`` first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .chainalg import ZZ
from .core import Edge, Hypergraph, associated_complex, edge_key, simplex
from .embedded import HomologyGroup, classical_homology, component_count, embedded_homology
from .errors import InternalError, PreconditionViolated, TokenCollision, UserError


@dataclass(frozen=True)
class Step:
    op: str                    # "O1", "O1'" or "O2"
    detail: object             # removed vertex (O1/O1') or removed hyperedge (O2)
    from_edge: Edge | None = None

    def to_dict(self):
        d = {"op": self.op}
        if self.op == "O2":
            d["edge"] = list(self.detail)
        else:
            d["vertex"] = self.detail
            d["from_edge"] = list(self.from_edge)
        return d


@dataclass
class ReductionTrace:
    start: Hypergraph
    steps: list = field(default_factory=list)
    final: Hypergraph = None

    def replay(self) -> Hypergraph:
        edges = set(self.start.edges)
        for s in self.steps:
            edges = apply_step(edges, s)
        return Hypergraph(frozenset(edges))

    def intermediates(self):
        """The hypergraphs before and after every step."""
        edges = set(self.start.edges)
        out = [Hypergraph(frozenset(edges))]
        for s in self.steps:
            edges = apply_step(edges, s)
            out.append(Hypergraph(frozenset(edges)))
        return out

    def to_dict(self):
        return {"steps": [s.to_dict() for s in self.steps],
                "final": [list(e) for e in self.final.sorted_edges()]}


def apply_step(edges: set, step: Step) -> set:
    edges = set(edges)
    if step.op == "O2":
        if step.detail not in edges or not any(set(step.detail) < set(e) for e in edges):
            raise InternalError(f"invalid O2 step {step}")
        edges.discard(step.detail)
        return edges
    v, e = step.detail, step.from_edge
    holders = [x for x in edges if v in x]
    if holders != [e]:
        raise InternalError(f"invalid {step.op} step {step}")
    if step.op == "O1'" and len(e) < 2:
        raise InternalError(f"invalid O1' step {step}")
    edges.discard(e)
    rest = tuple(x for x in e if x != v)
    if rest:
        edges.add(rest)
    return edges


def _o2_candidate(edges, rng):
    cands = sorted(edges, key=edge_key)
    if rng is not None:
        rng.shuffle(cands)
    for s in cands:
        ss = set(s)
        if any(ss < set(t) for t in edges if len(t) > len(s)):
            return Step("O2", s)
    return None


def _o1_candidate(edges, rng, primed):
    holders: dict = {}
    for e in edges:
        for v in e:
            holders.setdefault(v, []).append(e)
    verts = sorted(holders)
    if rng is not None:
        rng.shuffle(verts)
    for v in verts:
        hs = holders[v]
        if len(hs) == 1 and (not primed or len(hs[0]) >= 2):
            return Step("O1'" if primed else "O1", v, hs[0])
    return None


def _reduce(h: Hypergraph, primed: bool, rng):
    trace = ReductionTrace(h)
    edges = set(h.edges)
    while True:
        step = _o2_candidate(edges, rng) or _o1_candidate(edges, rng, primed)
        if step is None:
            break
        edges = apply_step(edges, step)
        trace.steps.append(step)
    trace.final = Hypergraph(frozenset(edges))
    return trace


def is_acyclic(h: Hypergraph, rng: random.Random | None = None):
    """``(verdict, trace)``: can O1/O2 reduce ``h`` to the empty hypergraph?

    Passing ``rng`` shuffles the candidate order (for stability experiments).
    """
    trace = _reduce(h, False, rng)
    return not trace.final, trace


def reduce_to_discrete(h: Hypergraph, rng: random.Random | None = None):
    """``(verdict, trace)`` for O1'/O2 reduction to isolated points."""
    trace = _reduce(h, True, rng)
    verdict = all(len(e) == 1 for e in trace.final.edges)
    if verdict != is_acyclic(h)[0]:
        raise InternalError("O1'/O2 and O1/O2 reductions disagree")
    return verdict, trace


def homology_along(trace: ReductionTrace) -> list:
    """Integral homology of the closure before and after each step of ``trace``,
    as ``(rank, torsion)`` tuples with trailing zero groups dropped."""
    out = []
    for x in trace.intermediates():
        sig = [g.signature() for g in classical_homology(associated_complex(x), ZZ)]
        while sig and sig[-1] == (0, ()):
            sig.pop()
        out.append(tuple(sig))
    return out


@dataclass
class AcyclicReport:
    closure_homology: list
    components: int
    top_homology: HomologyGroup | None
    closure_ok: bool
    top_ok: bool

    @property
    def holds(self) -> bool:
        return self.closure_ok and self.top_ok


def check_acyclic_consequences(h: Hypergraph) -> AcyclicReport:
    """For acyclic ``h``: the closure has the homology of ``k`` points, and the top
    embedded homology vanishes when ``dim h >= 1``."""
    if not is_acyclic(h)[0]:
        raise PreconditionViolated("hypergraph is not acyclic")
    k = associated_complex(h)
    groups = classical_homology(k, ZZ)
    comps = component_count(h)
    closure_ok = all(
        (g.rank == comps if g.degree == 0 else g.rank == 0) and not g.torsion for g in groups)
    top = None
    top_ok = True
    if h.dim >= 1:
        top = embedded_homology(h, ZZ)[h.dim]
        top_ok = top.is_zero
    return AcyclicReport(groups, comps, top, closure_ok, top_ok)


def is_disjoint_simplices(h: Hypergraph) -> bool:
    """Is the closure a disjoint union of full simplices on disjoint vertex sets?"""
    parent = {v: v for v in h.universe}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in h.edges:
        for v in e[1:]:
            parent[find(v)] = find(e[0])
    comps: dict = {}
    for v in h.universe:
        comps.setdefault(find(v), []).append(v)
    return all(tuple(sorted(vs)) in h.edges for vs in comps.values())


def check_disjoint_simplices(h: Hypergraph) -> bool:
    """Returns whether the disjoint-simplices condition holds; when it does,
    acyclicity is confirmed (and its failure is an internal error)."""
    cond = is_disjoint_simplices(h)
    if cond and not is_acyclic(h)[0]:
        raise InternalError("closure is a disjoint union of simplices but h is not acyclic")
    return cond


def _fresh(universe, count=2):
    taken = set(universe)
    out = []
    for base in ("x", "y", "z", "w"):
        cand = base
        i = 0
        while cand in taken:
            i += 1
            cand = f"{base}{i}"
            if i > 10_000:
                raise TokenCollision("cannot mint a fresh vertex token")
        taken.add(cand)
        out.append(cand)
        if len(out) == count:
            return out
    raise TokenCollision("cannot mint a fresh vertex token")


def cone_augmentation(h: Hypergraph, verify: bool = True) -> Hypergraph:
    """Add one hyperedge on all vertices plus two fresh ones.

    The result is acyclic, its closure is a full simplex of dimension
    ``n = |V| + 1``, and its embedded homology agrees with that of ``h`` in
    degrees up to ``n - 2`` and vanishes in degrees ``n - 1`` and ``n``.
    """
    if not h:
        raise UserError("cone augmentation needs a non-empty hypergraph")
    x, y = _fresh(h.universe)
    top = tuple(sorted(h.universe + (x, y)))
    out = Hypergraph(h.edges | {top})
    if verify:
        n = len(top) - 1
        if associated_complex(out) != simplex(top):
            raise InternalError("closure of the augmentation is not a simplex")
        if not (h < out and is_acyclic(out)[0]):
            raise InternalError("augmentation is not a strictly larger acyclic hypergraph")
        before = [g.signature() for g in embedded_homology(h, ZZ)]
        after = [g.signature() for g in embedded_homology(out, ZZ)]
        before += [(0, ())] * (n + 1 - len(before))
        if after[:n - 1] != before[:n - 1] or after[n - 1] != (0, ()) or after[n] != (0, ()):
            raise InternalError("augmentation changed the embedded homology")
    return out
