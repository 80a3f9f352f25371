"""Infimum and supremum chain complexes and embedded homology.

Chains of a hypergraph live in the simplicial chain groups of an ambient
simplicial complex (by default the associated complex).  The infimum complex
is the largest sub-complex supported on hyperedges; the supremum complex is
the smallest sub-complex containing every hyperedge.  Both have the same
homology, the embedded homology of the hypergraph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .chainalg import (QQ, ZZ, ChainSubspace, Matrix, Ring, boundary_between, boundary_matrix,
                       lattice_intersection, quotient_structure, rank, restricted_kernel,
                       smith_normal_form, solve)
from .core import (Hypergraph, HypergraphMorphism, SimplicialComplex, SimplicialMap,
                   apply_functor, associated_complex)
from .errors import InternalError, NotContained, PreconditionViolated, UserError


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    rank: int
    torsion: tuple = ()
    ring: Ring = ZZ

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.ring.is_field and self.torsion:
            raise InternalError("torsion over a field")

    @property
    def is_zero(self):
        return self.rank == 0 and not self.torsion

    def signature(self):
        return (self.rank, self.torsion)

    def to_dict(self):
        return {"degree": self.degree, "rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self):
        r = str(self.ring)
        parts = []
        if self.rank:
            parts.append(r if self.rank == 1 else f"{r}^{self.rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def homology_report(groups: Sequence[HomologyGroup], ring: Ring) -> dict:
    return {"coefficients": str(ring), "groups": [g.to_dict() for g in groups]}


# -- chain complexes ---------------------------------------------------------------

class EmbeddedChainComplex:
    """Per-degree sub-modules of the chain groups of ``ambient``.

    ``subspaces[n]`` is indexed by ``ambient.graded(n)``; degrees missing from
    the mapping are zero.
    """

    def __init__(self, ambient: SimplicialComplex, kind: str, ring: Ring, subspaces: dict):
        self.ambient = ambient
        self.kind = kind
        self.ring = ring
        self.subspaces = dict(subspaces)
        self._bd: dict = {}

    @property
    def top(self) -> int:
        return max(self.subspaces, default=-1)

    def __getitem__(self, n) -> ChainSubspace:
        if n in self.subspaces:
            return self.subspaces[n]
        return ChainSubspace.zero(self.ambient.graded(n) if n >= 0 else (), self.ring)

    def boundary(self, n: int) -> Matrix:
        if n not in self._bd:
            self._bd[n] = boundary_matrix(self.ambient, n, self.ring)
        return self._bd[n]

    def is_chain_complex(self) -> bool:
        for n in range(1, self.top + 1):
            lower = self[n - 1]
            if any(not lower.contains(self.boundary(n) @ v) for v in self[n].basis):
                return False
        return True

    def homology(self) -> list:
        return chain_homology(self.ambient, self.subspaces, self.ring, self.top)

    def __eq__(self, other):
        if not isinstance(other, EmbeddedChainComplex):
            return NotImplemented
        top = max(self.top, other.top)
        return self.ambient == other.ambient and all(self[n] == other[n] for n in range(top + 1))

    def __repr__(self):
        ranks = [self[n].rank for n in range(self.top + 1)]
        return f"EmbeddedChainComplex({self.kind}, ranks={ranks}, ring={self.ring})"


def _ambient_for(h: Hypergraph, ambient: SimplicialComplex | None) -> SimplicialComplex:
    if ambient is None:
        return associated_complex(h)
    if not h.edges <= ambient.edges:
        raise NotContained("hypergraph is not contained in the ambient complex")
    return ambient


def hyperedge_chains(h: Hypergraph, n: int, ring: Ring, ambient: SimplicialComplex) -> ChainSubspace:
    """The coordinate sub-module spanned by the n-hyperedges."""
    return ChainSubspace.coordinate(ambient.graded(n), h.graded(n), ring)


def infimum_chain(h: Hypergraph, ring: Ring = ZZ, ambient: SimplicialComplex | None = None):
    k = _ambient_for(h, ambient)
    subs = {}
    for n in range(h.dim + 1):
        edges = h.graded(n)
        outside = [s for s in k.graded(n - 1) if s not in h.edges] if n else []
        # chains on n-hyperedges whose boundary vanishes off the (n-1)-hyperedges
        proj = boundary_between(outside, edges, ring)
        ker = restricted_kernel(proj, ChainSubspace.full(edges, ring))
        subs[n] = _embed(ker, k.graded(n))
    return EmbeddedChainComplex(k, "inf", ring, subs)


def supremum_chain(h: Hypergraph, ring: Ring = ZZ, ambient: SimplicialComplex | None = None):
    k = _ambient_for(h, ambient)
    subs = {}
    for n in range(h.dim + 1):
        gens = list(hyperedge_chains(h, n, ring, k).basis)
        upper = h.graded(n + 1)
        if upper:
            bd = boundary_between(k.graded(n), upper, ring)
            gens += bd.columns()
        subs[n] = ChainSubspace.span(k.graded(n), gens, ring)
    return EmbeddedChainComplex(k, "sup", ring, subs)


def _embed(sub: ChainSubspace, labels: Sequence) -> ChainSubspace:
    index = {s: i for i, s in enumerate(labels)}
    zero = sub.ring.coerce(0)
    vecs = []
    for v in sub.basis:
        w = [zero] * len(labels)
        for s, x in zip(sub.ambient, v):
            w[index[s]] = x
        vecs.append(w)
    return ChainSubspace.span(labels, vecs, sub.ring)


def chain_homology(k: SimplicialComplex, subspaces: dict, ring: Ring, top: int) -> list:
    """Homology of a sub-complex of the chain complex of ``k``, degrees ``0..top``."""
    groups = []
    for n in range(top + 1):
        labels = k.graded(n)
        cn = subspaces.get(n, ChainSubspace.zero(labels, ring))
        z = restricted_kernel(boundary_matrix(k, n, ring), cn)
        up = subspaces.get(n + 1)
        if up is not None and up.rank:
            b = up.image(boundary_matrix(k, n + 1, ring), labels)
        else:
            b = ChainSubspace.zero(labels, ring)
        free, tors = quotient_structure(b, z)
        groups.append(HomologyGroup(n, free, tuple(tors), ring))
    return groups


# -- homology -------------------------------------------------------------------------

def embedded_cycles_boundaries(h: Hypergraph, n: int, ring: Ring, ambient=None):
    """Cycles on n-hyperedges and the boundaries among them."""
    k = _ambient_for(h, ambient)
    d = hyperedge_chains(h, n, ring, k)
    z = restricted_kernel(boundary_matrix(k, n, ring), d)
    up = hyperedge_chains(h, n + 1, ring, k)
    if up.rank:
        b = lattice_intersection(d, up.image(boundary_matrix(k, n + 1, ring), k.graded(n)))
    else:
        b = ChainSubspace.zero(k.graded(n), ring)
    return z, b


def embedded_homology(h: Hypergraph, ring: Ring = ZZ) -> list:
    """Embedded homology in degrees ``0..dim h`` (empty list for the empty hypergraph)."""
    k = associated_complex(h)
    out = []
    for n in range(h.dim + 1):
        z, b = embedded_cycles_boundaries(h, n, ring, k)
        free, tors = quotient_structure(b, z)
        out.append(HomologyGroup(n, free, tuple(tors), ring))
    return out


def inf_homology(h: Hypergraph, ring: Ring = ZZ) -> list:
    return infimum_chain(h, ring).homology()


def sup_homology(h: Hypergraph, ring: Ring = ZZ) -> list:
    return supremum_chain(h, ring).homology()


def betti_numbers(h: Hypergraph, ring: Ring = QQ) -> list:
    return [g.rank for g in embedded_homology(h, ring)]


def classical_homology(k: SimplicialComplex, ring: Ring = ZZ) -> list:
    """Simplicial homology from ranks and Smith forms of the full boundary matrices."""
    out = []
    bds = [boundary_matrix(k, n, ring) for n in range(k.dim + 2)]
    for n in range(k.dim + 1):
        size = len(k.graded(n))
        r_n = rank(bds[n], ring)
        r_up = rank(bds[n + 1], ring)
        tors = ()
        if ring.kind == "Z" and bds[n + 1].rows and bds[n + 1].cols:
            tors = tuple(sorted(d for d in smith_normal_form(bds[n + 1]).invariant_factors if d > 1))
        out.append(HomologyGroup(n, size - r_n - r_up, tors, ring))
    return out


def _components(vertices, edges) -> int:
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in edges:
        a = find(e[0])
        for v in e[1:]:
            b = find(v)
            if a != b:
                parent[b] = a
    return len({find(v) for v in vertices})


def component_count(h: Hypergraph) -> int:
    """Connected components of the vertex/edge graph of ``h`` (union-find)."""
    return _components(h.universe, [e for e in h.edges if len(e) > 1])


def zeroth_homology_components(h: Hypergraph) -> int:
    """Rank of the integral degree-0 embedded homology; every vertex must be a hyperedge."""
    missing = [v for v in h.universe if (v,) not in h.edges]
    if missing:
        raise PreconditionViolated(f"vertices {missing} are not 0-hyperedges")
    if not h:
        return 0
    rk = embedded_homology(h, ZZ)[0].rank
    uf = _components(h.universe, h.graded(1))
    if rk != uf:
        raise InternalError(f"H_0 rank {rk} disagrees with {uf} components")
    return rk


def top_homology(h: Hypergraph, ring: Ring = ZZ) -> HomologyGroup:
    if not h:
        raise UserError("top homology of the empty hypergraph")
    n = h.dim
    emb = embedded_homology(h, ring)[n]
    cls = classical_homology(associated_complex(h), ring)[n]
    if emb != cls:
        raise InternalError(f"top embedded homology {emb} differs from {cls}")
    return emb


# -- field homology with explicit bases ----------------------------------------------

class FieldHomology:
    """``cycles / boundaries`` over a field with a fixed basis of representatives.

    Representatives are cycle basis vectors (in canonical order) that are
    independent modulo the boundaries and the representatives chosen before.
    """

    def __init__(self, cycles: ChainSubspace, boundaries: ChainSubspace, degree: int = 0):
        if not cycles.ring.is_field:
            raise UserError("explicit homology bases need field coefficients")
        self.degree = degree
        self.cycles = cycles
        self.boundaries = boundaries
        self.ring = cycles.ring
        reps = []
        span = boundaries
        for z in cycles.basis:
            if not span.contains(z):
                reps.append(z)
                span = ChainSubspace.span(span.ambient, span.basis + (z,), self.ring)
        if span != cycles:
            raise InternalError("boundaries are not contained in cycles")
        self.reps = tuple(reps)

    @property
    def dim(self) -> int:
        return len(self.reps)

    @property
    def ambient(self):
        return self.cycles.ambient

    def classify(self, v) -> list:
        """Coordinates of the class of the cycle ``v`` on the representatives."""
        if not self.reps:
            if not self.cycles.contains(v):
                raise InternalError("vector is not a cycle")
            return []
        cols = list(self.boundaries.basis) + list(self.reps)
        x = solve(cols, v, self.ring)
        if x is None:
            raise InternalError("vector is not a cycle")
        return list(x[self.boundaries.rank:])

    def is_boundary(self, v) -> bool:
        return self.boundaries.contains(v)

    def matrix_of(self, images: Sequence, source_dim: int) -> Matrix:
        """Matrix (target reps x ``source_dim``) whose columns classify ``images``."""
        cols = [self.classify(v) for v in images]
        return Matrix.from_columns(cols, self.dim) if cols else Matrix.zeros(self.dim, source_dim)


def inf_field_homology(h: Hypergraph, n: int, ring: Ring = QQ, ambient=None) -> FieldHomology:
    z, b = embedded_cycles_boundaries(h, n, ring, ambient)
    return FieldHomology(z, b, n)


def transport(v: Sequence, src_labels: Sequence, dst_labels: Sequence, ring: Ring):
    """Re-index a chain between ambients; coordinates must exist in the target."""
    index = {s: i for i, s in enumerate(dst_labels)}
    out = [ring.coerce(0)] * len(dst_labels)
    for s, x in zip(src_labels, v):
        if x:
            if s not in index:
                raise InternalError(f"simplex {s} missing from the target ambient")
            out[index[s]] = x
    return tuple(out)


def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def chain_map_matrix(f: SimplicialMap, n: int, ring: Ring) -> Matrix:
    """Degree-n chain map of ``f``: a simplex goes to its image simplex (with the
    orientation sign of the image vertex order) or to zero if vertices collapse."""
    src = f.source.graded(n)
    tgt = f.target.graded(n)
    index = {s: i for i, s in enumerate(tgt)}
    data = [[ring.coerce(0)] * len(src) for _ in tgt]
    for j, s in enumerate(src):
        img = [f.vertex_map[v] for v in s]
        if len(set(img)) < len(img):
            continue
        data[index[tuple(sorted(img))]][j] = ring.coerce(_perm_sign(img))
    return Matrix(data, len(tgt), len(src))


@dataclass(frozen=True)
class HomologyMap:
    degree: int
    source: HomologyGroup
    target: HomologyGroup
    matrix: Matrix

    @property
    def rank(self) -> int:
        return rank(self.matrix, self.source.ring)


def induced_map(f: HypergraphMorphism, degree: int, ring: Ring = QQ) -> HomologyMap:
    """Matrix of the map induced on embedded homology in the chosen bases."""
    if not ring.is_field:
        raise UserError("induced maps are computed over a field")
    smap = apply_functor(f)
    src = inf_field_homology(f.source, degree, ring, smap.source)
    tgt = inf_field_homology(f.target, degree, ring, smap.target)
    m = chain_map_matrix(smap, degree, ring)
    images = [m @ z for z in src.reps]
    mat = tgt.matrix_of(images, src.dim)
    return HomologyMap(degree, HomologyGroup(degree, src.dim, (), ring),
                       HomologyGroup(degree, tgt.dim, (), ring), mat)


def ambient_independence_check(h: Hypergraph, k: SimplicialComplex, ring: Ring = ZZ) -> bool:
    """Inf and Sup computed inside ``k`` agree with those computed inside the closure."""
    if not h.edges <= k.edges:
        raise NotContained("hypergraph is not contained in the ambient complex")
    kh = associated_complex(h)
    for build in (infimum_chain, supremum_chain):
        big = build(h, ring, k)
        small = build(h, ring, kh)
        for n in range(h.dim + 1):
            labels = kh.graded(n)
            allowed = set(labels)
            vecs = []
            for v in big[n].basis:
                if any(x and s not in allowed for s, x in zip(big[n].ambient, v)):
                    return False
                vecs.append(transport(v, big[n].ambient, labels, ring))
            if ChainSubspace.span(labels, vecs, ring) != small[n]:
                return False
    return True
