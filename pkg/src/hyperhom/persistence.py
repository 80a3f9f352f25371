"""Filtrations of hypergraphs and persistent embedded homology.

Every step of a filtration is a sub-hypergraph of one base hypergraph, so all
steps are computed inside the closure of the base and the structure maps are
identities on chains.  Persistence is read off the rank invariant: the rank of
the map from step ``i`` to step ``j`` in homology.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .chainalg import QQ, Matrix, Ring, matmul, rank
from .core import Hypergraph, associated_complex, mv_condition, restrict
from .embedded import FieldHomology, embedded_homology, inf_field_homology
from .errors import (AsymmetricDistance, HypothesisViolated, InternalError, NegativeMultiplicity,
                     NonIncreasingRadii, ParseError, UserError, ValueOutOfRange)
from .mayer_vietoris import ExactnessReport, MVRow


def parse_number(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not an exact number: {text!r}") from exc


# -- metrics -------------------------------------------------------------------

class DistanceMatrix:
    """Exact pairwise distances; symmetric, zero diagonal, positive elsewhere.

    The triangle inequality is not required.
    """

    def __init__(self, tokens: Sequence[str], values: Sequence[Sequence]):
        self.tokens = tuple(tokens)
        n = len(self.tokens)
        if len(set(self.tokens)) != n:
            raise UserError("repeated token in distance matrix")
        vals = [[Fraction(x) for x in row] for row in values]
        if len(vals) != n or any(len(r) != n for r in vals):
            raise UserError("distance matrix must be square and match its tokens")
        for i in range(n):
            if vals[i][i] != 0:
                raise UserError(f"non-zero diagonal entry for {self.tokens[i]}")
            for j in range(i + 1, n):
                if vals[i][j] != vals[j][i]:
                    raise AsymmetricDistance(f"d({self.tokens[i]},{self.tokens[j]}) is not symmetric")
                if vals[i][j] <= 0:
                    raise UserError(f"non-positive distance between {self.tokens[i]} and {self.tokens[j]}")
        self._index = {t: i for i, t in enumerate(self.tokens)}
        self.values = vals

    @classmethod
    def from_mapping(cls, tokens, dist: Mapping):
        """Build from ``{(u, v): d}``; each unordered pair may appear once or both ways."""
        tokens = list(tokens)
        vals = [[Fraction(0)] * len(tokens) for _ in tokens]
        for i, u in enumerate(tokens):
            for j, v in enumerate(tokens):
                if i == j:
                    continue
                if (u, v) in dist:
                    vals[i][j] = Fraction(dist[(u, v)])
                elif (v, u) in dist:
                    vals[i][j] = Fraction(dist[(v, u)])
                else:
                    raise UserError(f"missing distance for {u},{v}")
        return cls(tokens, vals)

    @classmethod
    def uniform(cls, tokens, value=1):
        tokens = list(tokens)
        return cls(tokens, [[Fraction(0 if i == j else value) for j in range(len(tokens))]
                            for i in range(len(tokens))])

    def __call__(self, u, v) -> Fraction:
        return self.values[self._index[u]][self._index[v]]

    def covers(self, vertices) -> bool:
        return all(v in self._index for v in vertices)

    def below(self, u, v, r) -> bool:
        return self(u, v) < r

    def critical_values(self) -> list:
        n = len(self.tokens)
        return sorted({self.values[i][j] for i in range(n) for j in range(i + 1, n)})

    def beyond(self) -> Fraction:
        """A radius exceeding every distance."""
        return max(self.critical_values(), default=Fraction(0)) + 1

    def auto_radii(self, epsilon: Fraction | None = None) -> list:
        """A leading tiny radius plus every distinct distance bumped by ``epsilon``.

        The default ``epsilon`` is a thousandth of the smallest gap between
        consecutive distinct distances (counting the gap from zero).
        """
        ds = self.critical_values()
        if not ds:
            return [Fraction(1)]
        if epsilon is None:
            gaps = [b - a for a, b in zip([Fraction(0)] + ds, ds)]
            epsilon = min(gaps) / 1000
        return [Fraction(epsilon)] + [d + epsilon for d in ds]


class PointCloud:
    """Euclidean distances between rational points, compared via their squares."""

    def __init__(self, tokens: Sequence[str], coords: Sequence[Sequence]):
        self.tokens = tuple(tokens)
        if len(set(self.tokens)) != len(self.tokens):
            raise UserError("repeated token in point cloud")
        self.coords = [tuple(Fraction(x) for x in c) for c in coords]
        dims = {len(c) for c in self.coords}
        if len(dims) > 1:
            raise UserError("points have different dimensions")
        self._index = {t: i for i, t in enumerate(self.tokens)}
        for i, j in combinations(range(len(self.tokens)), 2):
            if self.coords[i] == self.coords[j]:
                raise UserError(f"points {self.tokens[i]} and {self.tokens[j]} coincide")

    def squared(self, u, v) -> Fraction:
        a, b = self.coords[self._index[u]], self.coords[self._index[v]]
        return sum((x - y) ** 2 for x, y in zip(a, b))

    def __call__(self, u, v) -> float:
        return math.sqrt(self.squared(u, v))

    def covers(self, vertices) -> bool:
        return all(v in self._index for v in vertices)

    def below(self, u, v, r) -> bool:
        return r > 0 and self.squared(u, v) < Fraction(r) ** 2

    def critical_values(self) -> list:
        """Distinct squared distances."""
        return sorted({self.squared(u, v) for u, v in combinations(self.tokens, 2)})

    def beyond(self) -> Fraction:
        return Fraction(math.isqrt(math.ceil(max(self.critical_values(), default=0))) + 2)

    def auto_radii(self, epsilon=None) -> list:
        """Rational radii separating consecutive distinct distances.

        Each radius is the first decimal ``s / 10**k`` (k >= 3) whose square
        exceeds one squared distance and stays below the next.  ``epsilon`` is
        accepted for interface symmetry and ignored.
        """
        qs = self.critical_values()
        if not qs:
            return [Fraction(1)]
        out = []
        k = 3
        while Fraction(1, 10 ** k) ** 2 >= qs[0]:
            k += 1
        out.append(Fraction(1, 10 ** k))
        for q, nxt in zip(qs, qs[1:] + [None]):
            k = 3
            while True:
                d = 10 ** k
                s = math.isqrt(math.floor(q * d * d)) + 1
                r = Fraction(s, d)
                if nxt is None or r * r < nxt:
                    out.append(r)
                    break
                k += 1
        return out


def read_point_cloud(text: str) -> PointCloud:
    tokens, coords = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        if len(parts) < 2:
            raise ParseError("expected a token followed by coordinates", line=lineno)
        tokens.append(parts[0])
        try:
            coords.append([Fraction(x) for x in parts[1:]])
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coordinate ({exc})", line=lineno) from exc
    return PointCloud(tokens, coords)


def read_distance_matrix(text: str) -> DistanceMatrix:
    rows = [r for r in csv.reader(io.StringIO(text)) if any(c.strip() for c in r)]
    if not rows:
        raise ParseError("empty distance matrix")
    header = [c.strip() for c in rows[0][1:]]
    vals = []
    for offset, r in enumerate(rows[1:]):
        if offset >= len(header) or r[0].strip() != header[offset]:
            raise ParseError("row labels must repeat the header order", line=offset + 2)
        vals.append([parse_number(c) for c in r[1:]])
    return DistanceMatrix(header, vals)


# -- filtrations -------------------------------------------------------------------

@dataclass(frozen=True)
class Filtration:
    """Nested sub-hypergraphs of ``base`` indexed by monotone parameters.

    ``increasing`` tells whether parameters grow along the filtration (metric
    radii) or shrink (superlevel thresholds).
    """

    parameters: tuple
    steps: tuple
    base: Hypergraph
    increasing: bool = True

    def __post_init__(self):
        object.__setattr__(self, "parameters", tuple(self.parameters))
        object.__setattr__(self, "steps", tuple(self.steps))
        if len(self.parameters) != len(self.steps):
            raise UserError("one parameter per step")
        for a, b in zip(self.parameters, self.parameters[1:]):
            if (a >= b) if self.increasing else (a <= b):
                raise NonIncreasingRadii("filtration parameters are not strictly monotone")
        for s, t in zip(self.steps, self.steps[1:]):
            if not s <= t:
                raise InternalError("filtration steps are not nested")
        if self.steps and not self.steps[-1] <= self.base:
            raise InternalError("filtration leaves the base hypergraph")

    def __len__(self):
        return len(self.steps)


def _check_radii(radii):
    radii = [Fraction(r) for r in radii]
    for a, b in zip(radii, radii[1:]):
        if a >= b:
            raise NonIncreasingRadii(f"radii must strictly increase ({a} then {b})")
    if radii and radii[0] <= 0:
        raise NonIncreasingRadii("radii must be positive")
    return radii


def metric_step(h: Hypergraph, dist, r) -> Hypergraph:
    """Hyperedges all of whose vertex pairs are at distance strictly below ``r``."""
    return Hypergraph(frozenset(
        e for e in h.edges if all(dist.below(u, v, r) for u, v in combinations(e, 2))))


def metric_filtration(h: Hypergraph, dist, radii) -> Filtration:
    radii = _check_radii(radii)
    if not dist.covers(h.universe):
        raise UserError("the metric does not cover every vertex")
    return Filtration(tuple(radii), tuple(metric_step(h, dist, r) for r in radii), h, True)


def _check_values(h, phi):
    missing = [v for v in h.universe if v not in phi]
    if missing:
        raise ValueOutOfRange(f"no value for vertices {missing}")
    out = {}
    for v in h.universe:
        x = Fraction(phi[v])
        if not 0 <= x <= 1:
            raise ValueOutOfRange(f"value {x} of {v} is outside [0, 1]")
        out[v] = x
    return out


def superlevel_step(h: Hypergraph, phi: Mapping, t) -> Hypergraph:
    return restrict(h, [v for v in h.universe if phi[v] >= t])


def sublevel_filtration(h: Hypergraph, phi: Mapping, direction: str = "superlevel") -> Filtration:
    """Superlevel filtration ``t -> {edges with every vertex value >= t}``.

    Steps run over the critical thresholds (distinct values together with 0)
    in decreasing order, so the hypergraphs grow.
    """
    if direction != "superlevel":
        raise UserError("only the superlevel convention is supported")
    phi = _check_values(h, phi)
    ts = sorted(set(phi.values()) | {Fraction(0)}, reverse=True)
    return Filtration(tuple(ts), tuple(superlevel_step(h, phi, t) for t in ts), h, False)


# -- persistent homology ---------------------------------------------------------------

def step_homologies(f: Filtration, degree: int, ring: Ring = QQ) -> list:
    k = associated_complex(f.base)
    return [inf_field_homology(s, degree, ring, k) for s in f.steps]


def structure_map(homs: Sequence[FieldHomology], i: int, j: int) -> Matrix:
    """Matrix of the map induced by the inclusion of step ``i`` into step ``j``."""
    src, dst = homs[i], homs[j]
    return dst.matrix_of(list(src.reps), src.dim)


def persistent_betti(f: Filtration, degree: int, ring: Ring = QQ) -> list:
    """``beta[i][j]`` = rank of the homology map from step i to step j (0 when i > j)."""
    if not ring.is_field:
        raise UserError("persistence is computed over a field")
    homs = step_homologies(f, degree, ring)
    n = len(homs)
    beta = [[0] * n for _ in range(n)]
    for i in range(n):
        beta[i][i] = homs[i].dim
        for j in range(i + 1, n):
            beta[i][j] = rank(structure_map(homs, i, j), ring)
    return beta


@dataclass(frozen=True)
class Interval:
    birth: Fraction
    death: Fraction | None      # None stands for infinity
    multiplicity: int = 1
    birth_index: int = 0
    death_index: int | None = None

    def to_dict(self):
        return {"birth": str(self.birth), "death": "inf" if self.death is None else str(self.death),
                "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class PersistenceDiagram:
    degree: int
    intervals: tuple = ()

    def to_dict(self):
        return {"degree": self.degree, "intervals": [iv.to_dict() for iv in self.intervals]}

    def rank_matrix(self, steps: int) -> list:
        """Reconstruct the rank invariant from the intervals."""
        beta = [[0] * steps for _ in range(steps)]
        for iv in self.intervals:
            end = steps if iv.death_index is None else iv.death_index
            for i in range(iv.birth_index, end):
                for j in range(i, end):
                    beta[i][j] += iv.multiplicity
        return beta


def persistence_diagram(beta: Sequence[Sequence[int]], parameters: Sequence, degree: int = 0):
    """Interval decomposition from the rank invariant by inclusion-exclusion.

    An interval born at step i and dying at step j < len(steps) is present
    exactly at steps i..j-1; survivors get ``death=None``.
    """
    n = len(beta)
    if len(parameters) != n:
        raise UserError("one parameter per step")

    def b(i, j):
        if i < 0 or j >= n:
            return 0
        return beta[i][j]

    out = []
    for i in range(n):
        for j in range(i + 1, n + 1):
            mu = b(i, j - 1) - b(i, j) - b(i - 1, j - 1) + b(i - 1, j)
            if mu < 0:
                raise NegativeMultiplicity(f"negative multiplicity for interval ({i}, {j})")
            if mu:
                death = None if j == n else parameters[j]
                out.append(Interval(parameters[i], death, mu, i, None if j == n else j))
    return PersistenceDiagram(degree, tuple(out))


def barcode(f: Filtration, degree: int, ring: Ring = QQ) -> PersistenceDiagram:
    return persistence_diagram(persistent_betti(f, degree, ring), f.parameters, degree)


def barcodes(f: Filtration, ring: Ring = QQ, max_degree: int | None = None) -> list:
    top = f.base.dim if max_degree is None else max_degree
    return [barcode(f, n, ring) for n in range(top + 1)]


def stabilized_homology(h: Hypergraph, dist, ring: Ring = QQ) -> list:
    """Homology of the metric filtration beyond the largest distance, which is ``h`` itself."""
    step = metric_step(h, dist, dist.beyond())
    if step != h:
        raise InternalError("metric filtration did not stabilise at the base hypergraph")
    return embedded_homology(step, ring)


# -- persistent Mayer-Vietoris ------------------------------------------------------------

@dataclass
class PersistentMVReport:
    parameters: list = field(default_factory=list)
    rows: list = field(default_factory=list)          # ExactnessReport per row
    row_hypotheses: list = field(default_factory=list)
    squares: list = field(default_factory=list)       # (row, degree, square, commutes)

    @property
    def ok(self) -> bool:
        return (all(self.row_hypotheses) and all(r.all_exact for r in self.rows)
                and all(s[3] for s in self.squares))

    def to_dict(self):
        return {
            "ok": self.ok,
            "rows": [{"parameter": "base" if p is None else str(p), "hypothesis_satisfied": hyp,
                      "all_exact": r.all_exact}
                     for p, hyp, r in zip(self.parameters, self.row_hypotheses, self.rows)],
            "squares": [{"row": i, "degree": n, "square": name, "commutes": ok}
                        for i, n, name, ok in self.squares],
        }


def _vertical(lower: FieldHomology, upper: FieldHomology) -> Matrix:
    return upper.matrix_of(list(lower.reps), lower.dim)


def _block_diag(a: Matrix, b: Matrix) -> Matrix:
    rows = [list(r) + [0] * b.cols for r in a.data] + [[0] * a.cols + list(r) for r in b.data]
    return Matrix(rows, a.rows + b.rows, a.cols + b.cols)


def verify_persistent_mv(h: Hypergraph, g: Hypergraph, dist, radii, ring: Ring = QQ,
                         include_base: bool = True) -> PersistentMVReport:
    """Row exactness and square commutativity of the persistent Mayer-Vietoris diagram.

    Rows are the pairs ``(h(r), g(r))`` for each radius, followed by ``(h, g)``
    itself when ``include_base`` is set.
    """
    if not mv_condition(h, g):
        raise HypothesisViolated("some non-empty edge intersection is missing from h ∩ g")
    radii = _check_radii(radii)
    u = h | g
    if not dist.covers(u.universe):
        raise UserError("the metric does not cover every vertex")
    k = associated_complex(u)
    top = max(h.dim, g.dim) + 1
    pairs = [(r, metric_step(h, dist, r), metric_step(g, dist, r)) for r in radii]
    if include_base:
        pairs.append((None, h, g))
    report = PersistentMVReport()
    rows = []
    for r, hr, gr in pairs:
        hyp = mv_condition(hr, gr)
        report.parameters.append(r)
        report.row_hypotheses.append(hyp)
        row = MVRow(hr, gr, ring, ambient=k, top=top)
        rows.append(row)
        report.rows.append(row.sequence().report(ring, hyp))
    for idx, (lo, hi) in enumerate(zip(rows, rows[1:])):
        for n in range(top + 1):
            va = _vertical(lo.A.hom[n], hi.A.hom[n])
            vb = _block_diag(_vertical(lo.Bh.hom[n], hi.Bh.hom[n]), _vertical(lo.Bg.hom[n], hi.Bg.hom[n]))
            vc = _vertical(lo.C.hom[n], hi.C.hom[n])
            checks = [
                ("intersection->direct_sum", matmul(hi.first(n), va, ring), matmul(vb, lo.first(n), ring)),
                ("direct_sum->union", matmul(hi.second(n), vb, ring), matmul(vc, lo.second(n), ring)),
            ]
            if n:
                va_low = _vertical(lo.A.hom[n - 1], hi.A.hom[n - 1])
                checks.append(("union->intersection", matmul(hi.connecting(n), vc, ring),
                               matmul(va_low, lo.connecting(n), ring)))
            for name, left, right in checks:
                report.squares.append((idx, n, name, left == right))
    return report
