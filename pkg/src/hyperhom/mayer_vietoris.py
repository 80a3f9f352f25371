"""Mayer-Vietoris sequences for embedded homology.

All four infimum complexes (of ``h``, ``g``, their intersection and their
union) are built inside the closure of ``h ∪ g``, so every map between them is
the identity on chain vectors and only has to be re-expressed in homology
bases.  The maps of the long exact sequence are

    H_n(h ∩ g) -> H_n(h) ⊕ H_n(g) -> H_n(h ∪ g) -> H_{n-1}(h ∩ g)
          x   |-> (x, -x)
                       (a, b)     |-> a + b
                                  z = a + b   |-> [∂a]

and exactness is checked over a field by rank arithmetic plus the vanishing
of consecutive composites.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chainalg import QQ, ChainSubspace, Matrix, Ring, boundary_matrix, matmul, preimage, rank, solve
from .core import Hypergraph, SimplicialComplex, associated_complex, mv_condition
from .embedded import FieldHomology, infimum_chain, restricted_kernel
from .errors import DegreeOutOfRange, HypothesisViolated, InternalError, UserError


@dataclass(frozen=True)
class Spot:
    degree: int
    spot: str
    dim: int
    ker_rank: int
    im_rank: int
    composite_zero: bool

    @property
    def exact(self) -> bool:
        return self.ker_rank == self.im_rank and self.composite_zero

    def to_dict(self):
        return {"degree": self.degree, "spot": self.spot, "dim": self.dim,
                "ker_rank": self.ker_rank, "im_rank": self.im_rank, "exact": self.exact}


@dataclass
class ExactnessReport:
    positions: list = field(default_factory=list)
    hypothesis_satisfied: bool = True

    @property
    def all_exact(self) -> bool:
        return all(p.exact for p in self.positions)

    @property
    def ok(self) -> bool:
        return self.hypothesis_satisfied and self.all_exact

    def to_dict(self):
        return {"hypothesis_satisfied": self.hypothesis_satisfied, "all_exact": self.all_exact,
                "positions": [p.to_dict() for p in self.positions]}


def _field(ring: Ring) -> Ring:
    if not ring.is_field:
        raise UserError("exactness is verified over a field (use Q or Z/p)")
    return ring


class _Complex:
    """Degreewise sub-modules of the chains of ``k`` with their homology."""

    def __init__(self, k: SimplicialComplex, spaces: dict, ring: Ring, top: int):
        self.k = k
        self.ring = ring
        self.spaces = {n: spaces.get(n, ChainSubspace.zero(k.graded(n), ring)) for n in range(top + 2)}
        self.top = top
        self.hom = {}
        for n in range(top + 1):
            z = restricted_kernel(boundary_matrix(k, n, ring), self.spaces[n])
            b = self.spaces[n + 1].image(boundary_matrix(k, n + 1, ring), k.graded(n))
            self.hom[n] = FieldHomology(z, b, n)

    def __getitem__(self, n):
        return self.spaces.get(n, ChainSubspace.zero(self.k.graded(n) if n >= 0 else (), self.ring))


def _relative(k, big: _Complex, small: _Complex, ring, top) -> dict:
    """Homology of ``big / small`` as cycles-rel-``small`` modulo ``small + ∂big``."""
    hom = {}
    for n in range(top + 1):
        if n:
            z = preimage(boundary_matrix(k, n, ring), big[n], small[n - 1])
        else:
            z = big[n]
        b = small[n] + big[n + 1].image(boundary_matrix(k, n + 1, ring), k.graded(n))
        hom[n] = FieldHomology(z, b, n)
    return hom


def _neg(v):
    return tuple(-x for x in v)


def _zero_map(rows, cols):
    return Matrix.zeros(rows, cols)


def _split(z, left: ChainSubspace, right: ChainSubspace, ring, reverse=False):
    """Write ``z = a + b`` with ``a`` in ``left`` and ``b`` in ``right``; returns ``a``."""
    cols = list(left.basis) + list(right.basis)
    if reverse:
        x = solve(cols[::-1], z, ring)
        x = None if x is None else x[::-1]
    else:
        x = solve(cols, z, ring)
    if x is None:
        raise InternalError("cycle does not split over the two summands")
    return left.combine(x[:left.rank])


class _Sequence:
    """A long exact sequence X0_n -> X1_n -> X2_n -> X0_{n-1} with explicit matrices."""

    def __init__(self, names, dims, first, second, connecting, top):
        self.names = names
        self.dims = dims            # dims[n] = (d0, d1, d2)
        self.first = first          # first[n]: X1_n <- X0_n
        self.second = second        # second[n]: X2_n <- X1_n
        self.connecting = connecting  # connecting[n]: X0_{n-1} <- X2_n
        self.top = top

    def report(self, ring, hypothesis=True) -> ExactnessReport:
        rep = ExactnessReport(hypothesis_satisfied=hypothesis)
        for n in range(self.top, -1, -1):
            d0, d1, d2 = self.dims[n]
            up = self.connecting.get(n + 1) or _zero_map(d0, self.dims.get(n + 1, (0, 0, 0))[2])
            down = self.connecting[n]
            for name, dim, incoming, outgoing in (
                (self.names[0], d0, up, self.first[n]),
                (self.names[1], d1, self.first[n], self.second[n]),
                (self.names[2], d2, self.second[n], down),
            ):
                comp = matmul(outgoing, incoming, ring)
                rep.positions.append(Spot(
                    n, name, dim, dim - rank(outgoing, ring), rank(incoming, ring),
                    all(x == 0 for r in comp.data for x in r)))
        return rep


class MVRow:
    """One row of the Mayer-Vietoris diagram for ``(h, g)`` inside ``ambient``."""

    def __init__(self, h: Hypergraph, g: Hypergraph, ring: Ring = QQ, ambient=None, top=None):
        ring = _field(ring)
        self.h, self.g, self.ring = h, g, ring
        k = ambient if ambient is not None else associated_complex(h | g)
        self.k = k
        if top is None:
            top = max(h.dim, g.dim) + 1
        self.top = top
        inf_h = infimum_chain(h, ring, k)
        inf_g = infimum_chain(g, ring, k)
        inf_u = infimum_chain(h | g, ring, k)
        inf_i = infimum_chain(h & g, ring, k)
        self.inf_h, self.inf_g = inf_h, inf_g
        for n in range(top + 1):
            if inf_h[n] & inf_g[n] != inf_i[n]:
                raise InternalError("Inf(h) ∩ Inf(g) differs from Inf(h ∩ g)")
        self.A = _Complex(k, inf_i.subspaces, ring, top)
        self.Bh = _Complex(k, inf_h.subspaces, ring, top)
        self.Bg = _Complex(k, inf_g.subspaces, ring, top)
        self.C = _Complex(k, inf_u.subspaces, ring, top)

    def dims(self, n):
        return (self.A.hom[n].dim, self.Bh.hom[n].dim + self.Bg.hom[n].dim, self.C.hom[n].dim)

    def first(self, n) -> Matrix:
        a, bh, bg = self.A.hom[n], self.Bh.hom[n], self.Bg.hom[n]
        cols = [bh.classify(x) + bg.classify(_neg(x)) for x in a.reps]
        return Matrix.from_columns(cols, bh.dim + bg.dim) if cols else _zero_map(bh.dim + bg.dim, 0)

    def second(self, n) -> Matrix:
        c = self.C.hom[n]
        imgs = list(self.Bh.hom[n].reps) + list(self.Bg.hom[n].reps)
        return c.matrix_of(imgs, len(imgs))

    def connecting(self, n, reverse=False) -> Matrix:
        c = self.C.hom[n] if n <= self.top else None
        if n == 0 or c is None:
            return _zero_map(self.A.hom[n - 1].dim if n else 0, c.dim if c else 0)
        a = self.A.hom[n - 1]
        bd = boundary_matrix(self.k, n, self.ring)
        imgs = [bd @ _split(z, self.Bh[n], self.Bg[n], self.ring, reverse) for z in c.reps]
        return a.matrix_of(imgs, c.dim)

    def sequence(self) -> _Sequence:
        dims = {n: self.dims(n) for n in range(self.top + 1)}
        return _Sequence(("intersection", "direct_sum", "union"), dims,
                         {n: self.first(n) for n in dims}, {n: self.second(n) for n in dims},
                         {n: self.connecting(n) for n in dims}, self.top)


def _require(h, g):
    if not mv_condition(h, g):
        raise HypothesisViolated("some non-empty edge intersection is missing from h ∩ g")


def short_exact_check(h: Hypergraph, g: Hypergraph, ring: Ring = QQ) -> bool:
    """Degreewise exactness of 0 -> Inf(h∩g) -> Inf(h) ⊕ Inf(g) -> Inf(h∪g) -> 0."""
    _require(h, g)
    ring = _field(ring)
    k = associated_complex(h | g)
    top = max(h.dim, g.dim)
    ih, ig = infimum_chain(h, ring, k), infimum_chain(g, ring, k)
    iu, ii = infimum_chain(h | g, ring, k), infimum_chain(h & g, ring, k)
    for n in range(top + 1):
        inter, a, b, u = ii[n], ih[n], ig[n], iu[n]
        # x -> (x, -x) is injective; its image must be the kernel of (a, b) -> a + b
        emb = Matrix.from_columns([v + _neg(v) for v in inter.basis], 2 * len(inter.ambient))
        if rank(emb, ring) != inter.rank:
            return False
        total = a + b
        ker_dim = a.rank + b.rank - total.rank
        if ker_dim != inter.rank or not (inter <= a and inter <= b):
            return False
        if total != u:
            return False
    return True


def connecting_homomorphism(h: Hypergraph, g: Hypergraph, n: int, ring: Ring = QQ) -> Matrix:
    """Matrix of H_n(h ∪ g) -> H_{n-1}(h ∩ g) on the chosen homology bases."""
    _require(h, g)
    if n < 1:
        raise DegreeOutOfRange("the connecting map starts in degree 1")
    row = MVRow(h, g, ring, top=max(n, max(h.dim, g.dim) + 1))
    m = row.connecting(n)
    if m != row.connecting(n, reverse=True):
        raise InternalError("connecting map depends on the chosen splitting")
    return m


def verify_long_exact(h: Hypergraph, g: Hypergraph, ring: Ring = QQ) -> ExactnessReport:
    _require(h, g)
    row = MVRow(h, g, ring)
    return row.sequence().report(row.ring)


def general_sequences(h: Hypergraph, g: Hypergraph, ring: Ring = QQ):
    """Exactness of the two long sequences available without the intersection hypothesis.

    With ``S = Inf(h) + Inf(g)`` and ``U = Inf(h ∪ g)``:

        H(Inf h ∩ Inf g) -> H(h) ⊕ H(g) -> H(S) -> ...
        H(S) -> H(U) -> H(U / S) -> ...
    """
    ring = _field(ring)
    k = associated_complex(h | g)
    top = max(h.dim, g.dim) + 1
    ih, ig, iu = infimum_chain(h, ring, k), infimum_chain(g, ring, k), infimum_chain(h | g, ring, k)
    spaces_i = {n: ih[n] & ig[n] for n in range(top + 2)}
    spaces_s = {n: ih[n] + ig[n] for n in range(top + 2)}
    I = _Complex(k, spaces_i, ring, top)
    Bh = _Complex(k, ih.subspaces, ring, top)
    Bg = _Complex(k, ig.subspaces, ring, top)
    S = _Complex(k, spaces_s, ring, top)
    U = _Complex(k, iu.subspaces, ring, top)
    Q = _relative(k, U, S, ring, top)
    for n in range(top + 1):
        if not S[n] <= U[n]:
            raise InternalError("Inf(h) + Inf(g) is not inside Inf(h ∪ g)")

    dims1, f1, s1, c1 = {}, {}, {}, {}
    dims2, f2, s2, c2 = {}, {}, {}, {}
    for n in range(top + 1):
        a, bh, bg, s, u, q = I.hom[n], Bh.hom[n], Bg.hom[n], S.hom[n], U.hom[n], Q[n]
        dims1[n] = (a.dim, bh.dim + bg.dim, s.dim)
        cols = [bh.classify(x) + bg.classify(_neg(x)) for x in a.reps]
        f1[n] = Matrix.from_columns(cols, bh.dim + bg.dim) if cols else _zero_map(bh.dim + bg.dim, 0)
        imgs = list(bh.reps) + list(bg.reps)
        s1[n] = s.matrix_of(imgs, len(imgs))
        bd = boundary_matrix(k, n, ring)
        if n:
            c1[n] = I.hom[n - 1].matrix_of([bd @ _split(z, Bh[n], Bg[n], ring) for z in s.reps], s.dim)
            c2[n] = S.hom[n - 1].matrix_of([bd @ z for z in q.reps], q.dim)
        else:
            c1[n] = _zero_map(0, s.dim)
            c2[n] = _zero_map(0, q.dim)
        dims2[n] = (s.dim, u.dim, q.dim)
        f2[n] = u.matrix_of(list(s.reps), s.dim)
        s2[n] = q.matrix_of(list(u.reps), u.dim)
    seq1 = _Sequence(("intersection", "direct_sum", "sum"), dims1, f1, s1, c1, top)
    seq2 = _Sequence(("sum", "union", "quotient"), dims2, f2, s2, c2, top)
    hyp = mv_condition(h, g)
    return seq1.report(ring, hyp), seq2.report(ring, hyp)


def euler_characteristic(betti) -> int:
    return sum((-1) ** n * b for n, b in enumerate(betti))
