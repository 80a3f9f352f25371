"""Hypergraphs, simplicial complexes, and morphisms between them.

A hyperedge is stored as a tuple of vertex tokens in increasing order.  Tokens
are ordered lexicographically, and collections of hyperedges are always
enumerated graded by cardinality and then lexicographically; every matrix in
the package inherits its row and column order from :func:`edge_key`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .errors import DuplicateVertexInEdge, InvalidMorphism, ParseError, UserError

Edge = tuple  # tuple[str, ...], strictly increasing


def edge_key(edge: Edge) -> tuple:
    return (len(edge), edge)


def make_edge(vertices: Iterable[str]) -> Edge:
    """Return the canonical form of a vertex collection, rejecting repeats."""
    vs = list(vertices)
    if not vs:
        raise UserError("hyperedges must be non-empty")
    for v in vs:
        _check_token(v)
    edge = tuple(sorted(vs))
    if len(set(edge)) != len(edge):
        raise UserError(f"duplicate vertex in hyperedge {vs!r}")
    return edge


def _check_token(token) -> None:
    if not isinstance(token, str) or not token or any(c.isspace() for c in token):
        raise UserError(f"invalid vertex token {token!r}")


def faces(edge: Edge) -> list[Edge]:
    """Codimension-one faces; the i-th entry drops the i-th vertex."""
    if len(edge) == 1:
        return []
    return [edge[:i] + edge[i + 1:] for i in range(len(edge))]


def subsets(edge: Edge) -> Iterator[Edge]:
    """All non-empty subsets of ``edge`` (including itself)."""
    for k in range(1, len(edge) + 1):
        yield from combinations(edge, k)


@dataclass(frozen=True)
class Hypergraph:
    """A finite set of non-empty hyperedges.

    The vertex universe is not stored; it is always the union of the edges.
    """

    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        edges = self.edges
        if not isinstance(edges, frozenset):
            edges = frozenset(edges)
            object.__setattr__(self, "edges", edges)
        for e in edges:
            if not isinstance(e, tuple) or not e or list(e) != sorted(set(e)):
                raise UserError(f"edge {e!r} is not in canonical form; use Hypergraph.from_edges")

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[str]]):
        return cls(frozenset(make_edge(e) for e in edges))

    @property
    def universe(self) -> tuple:
        return tuple(sorted({v for e in self.edges for v in e}))

    @property
    def dim(self) -> int:
        return max((len(e) - 1 for e in self.edges), default=-1)

    def order_index(self, vertex: str) -> int:
        return self.universe.index(vertex)

    def sorted_edges(self) -> list:
        return sorted(self.edges, key=edge_key)

    def graded(self, n: int) -> list:
        """Canonically ordered n-hyperedges (those with n + 1 vertices)."""
        return sorted(e for e in self.edges if len(e) == n + 1)

    def counts(self) -> list:
        return [len(self.graded(n)) for n in range(self.dim + 1)]

    def is_simplicial(self) -> bool:
        return all(f in self.edges for e in self.edges for f in faces(e))

    def __iter__(self):
        return iter(self.sorted_edges())

    def __len__(self):
        return len(self.edges)

    def __contains__(self, edge):
        return edge in self.edges

    def __bool__(self):
        return bool(self.edges)

    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersection(self, other)

    def __le__(self, other):
        return self.edges <= other.edges

    def __lt__(self, other):
        return self.edges < other.edges

    def __str__(self):
        return format_hypergraph(self)

    def __repr__(self):
        inner = ", ".join("{" + ",".join(e) + "}" for e in self.sorted_edges())
        return f"{type(self).__name__}({{{inner}}})"


@dataclass(frozen=True, repr=False)
class SimplicialComplex(Hypergraph):
    """A downward-closed hypergraph."""

    def __post_init__(self):
        super().__post_init__()
        for e in self.edges:
            for f in faces(e):
                if f not in self.edges:
                    raise UserError(f"not downward closed: face {f} of {e} missing")


def simplex(vertices: Iterable[str]) -> SimplicialComplex:
    """The full power set of ``vertices``."""
    return SimplicialComplex(frozenset(subsets(make_edge(vertices))))


def associated_complex(h: Hypergraph) -> SimplicialComplex:
    """The smallest simplicial complex containing every hyperedge of ``h``."""
    if isinstance(h, SimplicialComplex):
        return h
    closed = set()
    # visit maximal-looking edges first so sub-simplices are skipped quickly
    for e in sorted(h.edges, key=len, reverse=True):
        if e in closed:
            continue
        closed.update(subsets(e))
    return SimplicialComplex(frozenset(closed))


def complement_hypergraph(h: Hypergraph) -> Hypergraph:
    return Hypergraph(associated_complex(h).edges - h.edges)


def union(h: Hypergraph, g: Hypergraph) -> Hypergraph:
    return Hypergraph(h.edges | g.edges)


def intersection(h: Hypergraph, g: Hypergraph) -> Hypergraph:
    return Hypergraph(h.edges & g.edges)


def restrict(h: Hypergraph, vertices) -> Hypergraph:
    """Hyperedges of ``h`` all of whose vertices lie in ``vertices``."""
    keep = set(vertices)
    return Hypergraph(frozenset(e for e in h.edges if keep.issuperset(e)))


def mv_condition(h: Hypergraph, g: Hypergraph) -> bool:
    """Every non-empty pairwise intersection of edges lies in both hypergraphs."""
    common = h.edges & g.edges
    for s in h.edges:
        ss = set(s)
        for t in g.edges:
            meet = tuple(v for v in t if v in ss)
            if meet and meet not in common:
                return False
    return True


def singletons(h: Hypergraph) -> Hypergraph:
    return Hypergraph(frozenset((v,) for v in h.universe))


# -- parsing -----------------------------------------------------------------

def parse_hypergraph(text: str) -> Hypergraph:
    """Read the line-oriented ``.hg`` format.

    One hyperedge per line, whitespace-separated tokens, ``#`` comments, blank
    lines ignored, repeated edges merged.  A repeated vertex within a line is
    an error.
    """
    edges = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = line.split()
        if not tokens:
            continue
        if len(set(tokens)) != len(tokens):
            dup = next(t for t in tokens if tokens.count(t) > 1)
            raise DuplicateVertexInEdge(f"duplicate vertex {dup!r} in hyperedge", line=lineno)
        edges.add(tuple(sorted(tokens)))
    return Hypergraph(frozenset(edges))


def format_hypergraph(h: Hypergraph) -> str:
    return "".join(" ".join(e) + "\n" for e in h.sorted_edges())


def read_hypergraph(path) -> Hypergraph:
    from pathlib import Path

    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not UTF-8 ({exc})") from exc
    return parse_hypergraph(text)


# -- morphisms ---------------------------------------------------------------

@dataclass(frozen=True)
class HypergraphMorphism:
    """A vertex map sending every source hyperedge onto a target hyperedge."""

    source: Hypergraph
    target: Hypergraph
    vertex_map: Mapping

    def __post_init__(self):
        vm = dict(self.vertex_map)
        object.__setattr__(self, "vertex_map", vm)
        missing = [v for v in self.source.universe if v not in vm]
        if missing:
            raise InvalidMorphism(f"vertex map undefined on {missing}")
        tu = set(self.target.universe)
        bad = sorted(v for v in self.source.universe if vm[v] not in tu)
        if bad:
            raise InvalidMorphism(f"images of {bad} are not target vertices")
        for e in self.source.sorted_edges():
            img = self.image(e)
            if img not in self.target.edges:
                raise InvalidMorphism(f"image {img} of hyperedge {e} is not a target hyperedge")

    def image(self, edge: Edge) -> Edge:
        return tuple(sorted({self.vertex_map[v] for v in edge}))

    def __call__(self, vertex):
        return self.vertex_map[vertex]

    def compose(self, first: "HypergraphMorphism") -> "HypergraphMorphism":
        """``self ∘ first``."""
        vm = {v: self.vertex_map[first.vertex_map[v]] for v in first.source.universe}
        return HypergraphMorphism(first.source, self.target, vm)

    @classmethod
    def identity(cls, h: Hypergraph):
        return cls(h, h, {v: v for v in h.universe})

    @classmethod
    def inclusion(cls, sub: Hypergraph, sup: Hypergraph):
        if not sub <= sup:
            raise InvalidMorphism("source is not a sub-hypergraph of target")
        return cls(sub, sup, {v: v for v in sub.universe})


@dataclass(frozen=True)
class SimplicialMap:
    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: Mapping

    def image(self, simplex: Edge) -> Edge:
        return tuple(sorted({self.vertex_map[v] for v in simplex}))

    def compose(self, first: "SimplicialMap") -> "SimplicialMap":
        vm = {v: self.vertex_map[first.vertex_map[v]] for v in first.source.universe}
        return SimplicialMap(first.source, self.target, vm)


def apply_functor(f: HypergraphMorphism) -> SimplicialMap:
    """Extend a hypergraph morphism to the associated simplicial complexes."""
    ks, kt = associated_complex(f.source), associated_complex(f.target)
    for s in ks.sorted_edges():
        if f.image(s) not in kt.edges:
            raise InvalidMorphism(f"image of simplex {s} is not a simplex of the target closure")
    return SimplicialMap(ks, kt, dict(f.vertex_map))
