"""Exact linear algebra over the integers, the rationals and prime fields.

Nothing here touches floating point.  Integer entries are Python ints,
rational entries are :class:`fractions.Fraction`, and prime-field entries are
ints reduced into ``range(p)``.

Sub-modules of a free module are held as :class:`ChainSubspace` objects whose
basis is kept in a canonical echelon form (Hermite normal form over ``Z``,
reduced row echelon form over a field), so two subspaces are equal exactly
when their stored bases are equal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import SimplicialComplex, faces
from .errors import AmbientMismatch, InternalError, NotASubgroup, UserError


# -- coefficient rings ---------------------------------------------------------

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Ring:
    """``Z``, ``Q`` or ``Z/p`` (use :data:`ZZ`, :data:`QQ`, :func:`GF`)."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Zp"):
            raise UserError(f"unknown coefficient ring {self.kind!r}")
        if self.kind == "Zp":
            if not isinstance(self.p, int) or not _is_prime(self.p):
                raise UserError(f"Z/p needs a prime p, got {self.p!r}")
        elif self.p is not None:
            raise UserError("p is only meaningful for Z/p")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    def coerce(self, x):
        if self.kind == "Z":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise UserError(f"{x} is not an integer")
                return x.numerator
            return int(x)
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.kind == "Q":
            return 1 / Fraction(x)
        if self.kind == "Zp":
            return pow(x, -1, self.p)
        raise UserError("no inverses in Z")

    def __str__(self):
        return f"Z/{self.p}" if self.kind == "Zp" else self.kind


ZZ = Ring("Z")
QQ = Ring("Q")


def GF(p: int) -> Ring:
    return Ring("Zp", p)


def ring_from_flag(coeff: str, p: int | None = None) -> Ring:
    coeff = coeff.lower()
    if coeff == "z":
        return ZZ
    if coeff == "q":
        return QQ
    if coeff == "zp":
        if p is None:
            raise UserError("--coeff zp needs --p")
        return GF(p)
    raise UserError(f"unknown coefficient flag {coeff!r}")


# -- dense matrices ------------------------------------------------------------

class Matrix:
    """Small dense matrix with exact entries, stored row-major and immutable."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Sequence], rows: int | None = None, cols: int | None = None):
        data = tuple(tuple(r) for r in data)
        self.rows = len(data) if rows is None else rows
        if cols is None:
            cols = len(data[0]) if data else 0
        self.cols = cols
        if len(data) != self.rows or any(len(r) != cols for r in data):
            raise UserError("ragged matrix data")
        self.data = data

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int):
        columns = list(columns)
        return cls([[c[i] for c in columns] for i in range(rows)], rows, len(columns))

    def column(self, j):
        return tuple(r[j] for r in self.data)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self):
        return Matrix.from_columns(self.data, self.cols)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise UserError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = other.columns()
            return Matrix([[sum(a * b for a, b in zip(r, c)) for c in ocols] for r in self.data],
                          self.rows, other.cols)
        v = tuple(other)
        if len(v) != self.cols:
            raise UserError("shape mismatch in matrix-vector product")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.data)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.shape, self.data))

    def __repr__(self):
        return f"Matrix({[list(r) for r in self.data]}, {self.rows}x{self.cols})"

    def map(self, fn):
        return Matrix([[fn(x) for x in r] for r in self.data], self.rows, self.cols)

    def select_rows(self, idx):
        return Matrix([self.data[i] for i in idx], len(idx), self.cols)

    def select_columns(self, idx):
        return Matrix([[r[j] for j in idx] for r in self.data], self.rows, len(idx))

    def is_diagonal(self):
        return all(x == 0 for i, r in enumerate(self.data) for j, x in enumerate(r) if i != j)

    def diagonal(self):
        return [self.data[i][i] for i in range(min(self.rows, self.cols))]

    def det(self):
        if self.rows != self.cols:
            raise UserError("determinant of a non-square matrix")
        rows = [[Fraction(x) for x in r] for r in self.data]
        n, d = self.rows, Fraction(1)
        for c in range(n):
            piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
            if piv is None:
                return 0
            if piv != c:
                rows[c], rows[piv] = rows[piv], rows[c]
                d = -d
            d *= rows[c][c]
            for i in range(c + 1, n):
                if rows[i][c]:
                    f = rows[i][c] / rows[c][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
        return d

    def tolist(self):
        return [list(r) for r in self.data]

    def to_json(self) -> str:
        return json.dumps([[_jsonable(x) for x in r] for r in self.data])


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    return x


def hstack(*mats: Matrix) -> Matrix:
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise UserError("hstack row mismatch")
    return Matrix([sum((m.data[i] for m in mats), ()) for i in range(rows)], rows,
                  sum(m.cols for m in mats))


# -- boundary matrices -----------------------------------------------------------

def boundary_matrix(k: SimplicialComplex, n: int, ring: Ring = ZZ) -> Matrix:
    """Matrix of the simplicial boundary from degree n to degree n - 1.

    Rows follow ``k.graded(n - 1)`` and columns ``k.graded(n)``; the entry for
    the face dropping the i-th vertex is ``(-1)**i``.  Degree 0 yields a
    matrix with no rows.
    """
    if n < 0:
        raise UserError("degree must be non-negative")
    cols = k.graded(n)
    if n == 0:
        return Matrix([], 0, len(cols))
    rows = k.graded(n - 1)
    return boundary_between(rows, cols, ring)


def boundary_between(rows: Sequence, cols: Sequence, ring: Ring = ZZ) -> Matrix:
    """Boundary matrix with arbitrary row/column simplex lists.

    Faces not listed among ``rows`` are dropped (that is, projected away).
    """
    index = {s: i for i, s in enumerate(rows)}
    data = [[0] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        for i, f in enumerate(faces(s)):
            r = index.get(f)
            if r is not None:
                data[r][j] = ring.coerce(-1 if i % 2 else 1)
    return Matrix(data, len(rows), len(cols))


def boundary_vector(chain: dict, ring: Ring = ZZ) -> dict:
    """Boundary of a chain given as ``{simplex: coefficient}``."""
    out: dict = {}
    for s, c in chain.items():
        for i, f in enumerate(faces(s)):
            out[f] = out.get(f, 0) + (-c if i % 2 else c)
    return {f: ring.coerce(c) for f, c in out.items() if ring.coerce(c) != 0}


# -- integer echelon forms and Smith normal form ------------------------------------

def _int_echelon(rows: list, pivot_cols: int, reduce_above: bool = True):
    """Unimodular row reduction of ``rows`` (mutated) on the first ``pivot_cols`` columns.

    Returns the pivot columns.  Pivots are positive, and with ``reduce_above``
    the entries above each pivot are reduced into ``[0, pivot)``, which makes
    the non-zero rows the Hermite normal form of the row lattice.
    """
    r = 0
    pivots = []
    nrows = len(rows)
    for c in range(pivot_cols):
        while True:
            nz = [i for i in range(r, nrows) if rows[i][c] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: (abs(rows[i][c]), i))
            rows[r], rows[best] = rows[best], rows[r]
            p = rows[r][c]
            done = True
            for i in range(r + 1, nrows):
                if rows[i][c]:
                    q = rows[i][c] // p
                    if q:
                        rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    if rows[i][c]:
                        done = False
            if done:
                break
        if r < nrows and rows[r][c] != 0:
            if rows[r][c] < 0:
                rows[r] = [-a for a in rows[r]]
            if reduce_above:
                p = rows[r][c]
                for i in range(r):
                    q = rows[i][c] // p
                    if q:
                        rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == nrows:
                break
    return pivots


def hermite_rows(vectors: Iterable[Sequence[int]], length: int) -> list:
    """Hermite normal form of the lattice spanned by ``vectors`` (as rows)."""
    rows = [list(map(int, v)) for v in vectors]
    if not rows:
        return []
    pivots = _int_echelon(rows, length)
    return [tuple(r) for r in rows[:len(pivots)]]


@dataclass(frozen=True)
class SNFResult:
    U: Matrix
    S: Matrix
    V: Matrix

    @property
    def invariant_factors(self) -> list:
        return [d for d in self.S.diagonal() if d != 0]


def smith_normal_form(a: Matrix) -> SNFResult:
    """Unimodular ``U``, ``V`` with ``U @ a @ V`` diagonal and divisibility-ordered.

    The pivot is always an entry of least absolute value in the active block,
    with ties going to the lowest (row, column).
    """
    m, n = a.shape
    S = [[int(x) for x in r] for r in a.data]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in S:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        S[dst] = [x + q * y for x, y in zip(S[dst], S[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for r in S:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = S[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    clean = clean and S[i][t] == 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    clean = clean and S[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p), None)
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if t < m and t < n and S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        if all(S[i][j] == 0 for i in range(t, m) for j in range(t, n)):
            break
    return SNFResult(Matrix(U, m, m), Matrix(S, m, n), Matrix(V, n, n))


# -- field elimination ---------------------------------------------------------

def _field_rref(rows: list, ring: Ring, pivot_cols: int | None = None):
    """Reduced row echelon form in place over a field; returns pivot columns."""
    if not rows:
        return []
    width = len(rows[0]) if pivot_cols is None else pivot_cols
    p = ring.p if ring.kind == "Zp" else None
    r = 0
    pivots = []
    for c in range(width):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ring.inv(rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        if p:
            rows[r] = [x % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
                if p:
                    rows[i] = [x % p for x in rows[i]]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(a: Matrix, ring: Ring = QQ) -> int:
    """Rank over ``ring`` (over ``Z`` this is the rank over ``Q``)."""
    field = QQ if ring.kind == "Z" else ring
    rows = [[field.coerce(x) for x in r] for r in a.data]
    return len(_field_rref(rows, field)) if rows and a.cols else 0


def _kernel_vectors(a: Matrix, ring: Ring) -> list:
    m, n = a.shape
    if ring.kind == "Z":
        # rows of [A^T | I]; rows whose A^T part vanishes carry a kernel basis
        rows = [[int(a.data[i][j]) for i in range(m)] + [int(j == k) for k in range(n)]
                for j in range(n)]
        piv = _int_echelon(rows, m, reduce_above=False)
        return [tuple(r[m:]) for r in rows[len(piv):]]
    rows = [[ring.coerce(x) for x in r] for r in a.data]
    piv = _field_rref(rows, ring) if rows and n else []
    free = [j for j in range(n) if j not in piv]
    out = []
    for f in free:
        v = [ring.coerce(0)] * n
        v[f] = ring.coerce(1)
        for i, pc in enumerate(piv):
            v[pc] = ring.coerce(-rows[i][f])
        out.append(tuple(v))
    return out


# -- sub-modules -----------------------------------------------------------------

class ChainSubspace:
    """A sub-module of ``ring**len(ambient)`` with a canonical basis.

    ``ambient`` labels the coordinates (simplices in canonical order, or any
    hashable labels).  Basis vectors are tuples; over ``Z`` they are the rows
    of the Hermite normal form of the lattice, over a field the rows of the
    reduced row echelon form.
    """

    __slots__ = ("ambient", "ring", "basis", "_pivots")

    def __init__(self, ambient: Sequence, ring: Ring, basis: Sequence, _pivots=None):
        self.ambient = tuple(ambient)
        self.ring = ring
        self.basis = tuple(tuple(v) for v in basis)
        self._pivots = _pivots

    @classmethod
    def span(cls, ambient: Sequence, generators: Iterable[Sequence], ring: Ring):
        ambient = tuple(ambient)
        n = len(ambient)
        gens = []
        for g in generators:
            g = [ring.coerce(x) for x in g]
            if len(g) != n:
                raise AmbientMismatch(f"generator of length {len(g)} in ambient of size {n}")
            if any(g):
                gens.append(g)
        if not gens:
            return cls(ambient, ring, (), ())
        if ring.kind == "Z":
            pivots = _int_echelon(gens, n)
        else:
            pivots = _field_rref(gens, ring)
        return cls(ambient, ring, gens[:len(pivots)], tuple(pivots))

    @classmethod
    def zero(cls, ambient, ring):
        return cls(tuple(ambient), ring, (), ())

    @classmethod
    def full(cls, ambient, ring):
        ambient = tuple(ambient)
        return cls.coordinate(ambient, ambient, ring)

    @classmethod
    def coordinate(cls, ambient, chosen, ring):
        """The coordinate sub-module spanned by the labels in ``chosen``."""
        ambient = tuple(ambient)
        chosen = set(chosen)
        n = len(ambient)
        one = ring.coerce(1)
        zero = ring.coerce(0)
        basis, piv = [], []
        for i, s in enumerate(ambient):
            if s in chosen:
                v = [zero] * n
                v[i] = one
                basis.append(tuple(v))
                piv.append(i)
        return cls(ambient, ring, basis, tuple(piv))

    @property
    def pivots(self):
        if self._pivots is None:
            self._pivots = tuple(next(i for i, x in enumerate(v) if x != 0) for v in self.basis)
        return self._pivots

    @property
    def rank(self) -> int:
        return len(self.basis)

    dim = rank

    @property
    def basis_matrix(self) -> Matrix:
        return Matrix.from_columns(self.basis, len(self.ambient))

    def _same_space(self, other):
        if self.ambient != other.ambient or self.ring != other.ring:
            raise AmbientMismatch("sub-modules live in different ambients or rings")

    def __eq__(self, other):
        if not isinstance(other, ChainSubspace):
            return NotImplemented
        return (self.ambient, self.ring, self.basis) == (other.ambient, other.ring, other.basis)

    def __hash__(self):
        return hash((self.ambient, self.ring, self.basis))

    def __repr__(self):
        return f"ChainSubspace(rank={self.rank}, ambient={len(self.ambient)}, ring={self.ring})"

    def coordinates(self, v: Sequence):
        """Coefficients expressing ``v`` in the basis, or ``None`` if ``v`` is outside."""
        ring = self.ring
        res = [ring.coerce(x) for x in v]
        if len(res) != len(self.ambient):
            raise AmbientMismatch("vector length does not match the ambient")
        p = ring.p if ring.kind == "Zp" else None
        coeffs = []
        for b, c in zip(self.basis, self.pivots):
            x = res[c]
            if x == 0:
                coeffs.append(ring.coerce(0))
                continue
            if ring.kind == "Z":
                q, r = divmod(x, b[c])
                if r:
                    return None
            else:
                q = x * ring.inv(b[c])
                if p:
                    q %= p
            coeffs.append(q)
            res = [a - q * y for a, y in zip(res, b)]
            if p:
                res = [a % p for a in res]
        if any(res):
            return None
        return coeffs

    def contains(self, v) -> bool:
        return self.coordinates(v) is not None

    __contains__ = contains

    def issubset(self, other: "ChainSubspace") -> bool:
        self._same_space(other)
        return all(other.contains(b) for b in self.basis)

    def __le__(self, other):
        return self.issubset(other)

    def __add__(self, other: "ChainSubspace") -> "ChainSubspace":
        self._same_space(other)
        return ChainSubspace.span(self.ambient, self.basis + other.basis, self.ring)

    def __and__(self, other):
        return lattice_intersection(self, other)

    def image(self, a: Matrix, target_ambient: Sequence) -> "ChainSubspace":
        """Image of this sub-module under ``a`` (columns indexed like the ambient)."""
        if a.cols != len(self.ambient) or a.rows != len(target_ambient):
            raise AmbientMismatch("matrix does not match the ambients")
        return ChainSubspace.span(target_ambient, [a @ b for b in self.basis], self.ring)

    def combine(self, coeffs: Sequence):
        """The vector ``sum(c_i * basis_i)``."""
        n = len(self.ambient)
        out = [self.ring.coerce(0)] * n
        for c, b in zip(coeffs, self.basis):
            if c:
                out = [x + c * y for x, y in zip(out, b)]
        return tuple(self.ring.coerce(x) for x in out)


def kernel_basis(a: Matrix, ring: Ring, ambient: Sequence | None = None) -> ChainSubspace:
    """The kernel of ``a``; over ``Z`` the full (saturated) kernel lattice."""
    if ambient is None:
        ambient = tuple(range(a.cols))
    return ChainSubspace.span(ambient, _kernel_vectors(a, ring), ring)


def restricted_kernel(a: Matrix, sub: ChainSubspace) -> ChainSubspace:
    """``{x in sub : a x = 0}``."""
    b = sub.basis_matrix
    k = _kernel_vectors(a @ b, sub.ring) if sub.rank else []
    return ChainSubspace.span(sub.ambient, [sub.combine(c) for c in k], sub.ring)


def lattice_intersection(a: ChainSubspace, b: ChainSubspace) -> ChainSubspace:
    a._same_space(b)
    if not a.rank or not b.rank:
        return ChainSubspace.zero(a.ambient, a.ring)
    neg = [tuple(-x for x in v) for v in b.basis]
    stacked = Matrix.from_columns(a.basis + tuple(neg), len(a.ambient))
    ker = _kernel_vectors(stacked, a.ring)
    return ChainSubspace.span(a.ambient, [a.combine(k[:a.rank]) for k in ker], a.ring)


def quotient_structure(sub: ChainSubspace, sup: ChainSubspace):
    """``(free_rank, torsion)`` of ``sup / sub``; raises NotASubgroup unless ``sub <= sup``."""
    sub._same_space(sup)
    coords = []
    for v in sub.basis:
        c = sup.coordinates(v)
        if c is None:
            raise NotASubgroup("the first argument is not contained in the second")
        coords.append(c)
    if sub.ring.kind != "Z":
        return sup.rank - sub.rank, []
    if not coords:
        return sup.rank, []
    snf = smith_normal_form(Matrix.from_columns(coords, sup.rank))
    d = snf.invariant_factors
    if len(d) != sub.rank:
        raise InternalError("canonical basis was not independent")
    return sup.rank - len(d), sorted(x for x in d if x > 1)


def solve(columns: Sequence[Sequence], target: Sequence, ring: Ring):
    """One solution ``x`` of ``sum(x_i * columns_i) == target``, or ``None``.

    Gaussian elimination in the given column order over a field; over ``Z`` an
    integer solution is required.  Free variables are set to zero.
    """
    n = len(target)
    k = len(columns)
    field = QQ if ring.kind == "Z" else ring
    rows = [[field.coerce(columns[j][i]) for j in range(k)] + [field.coerce(target[i])]
            for i in range(n)]
    if not rows:
        return [ring.coerce(0)] * k
    piv = _field_rref(rows, field, pivot_cols=k)
    if any(rows[i][k] != 0 for i in range(len(piv), n)):
        return None
    x = [field.coerce(0)] * k
    for i, c in enumerate(piv):
        x[c] = rows[i][k]
    if ring.kind == "Z":
        if any(isinstance(v, Fraction) and v.denominator != 1 for v in x):
            # a rational solution exists; look for an integral one in the lattice sense
            lat = ChainSubspace.span(range(n), columns, ZZ)
            if not lat.contains(target):
                return None
            return _integer_solution(columns, target)
        return [int(v) for v in x]
    return x


def _integer_solution(columns, target):
    n, k = len(target), len(columns)
    # rows of [C^T | I] reduced; then back-substitute target through the echelon rows
    rows = [[int(columns[j][i]) for i in range(n)] + [int(j == t) for t in range(k)]
            for j in range(k)]
    piv = _int_echelon(rows, n, reduce_above=False)
    res = [int(x) for x in target]
    x = [0] * k
    for r, c in zip(rows, piv):
        q, rem = divmod(res[c], r[c])
        if rem:
            return None
        res = [a - q * b for a, b in zip(res, r[:n])]
        x = [a + q * b for a, b in zip(x, r[n:])]
    return x if not any(res) else None


def preimage(a: Matrix, domain: ChainSubspace, target: ChainSubspace) -> ChainSubspace:
    """``{x in domain : a x in target}``."""
    ring = domain.ring
    if not domain.rank:
        return domain
    img = a @ domain.basis_matrix
    if target.rank:
        neg = Matrix.from_columns([tuple(-x for x in v) for v in target.basis], a.rows)
        stacked = hstack(img, neg)
    else:
        stacked = img
    ker = _kernel_vectors(stacked, ring)
    return ChainSubspace.span(domain.ambient, [domain.combine(k[:domain.rank]) for k in ker], ring)


def matmul(a: Matrix, b: Matrix, ring: Ring) -> Matrix:
    """Product with entries normalised into ``ring``."""
    return (a @ b).map(ring.coerce)
