"""Connectivity, differentiation and correlation indices of a hyper-network.

All three are built from rational Betti numbers of sub-hypergraphs.  The
connectivity index is an exact rational.  The other two compare a barcode
(a step function of the threshold) against its expectation over vertex
functions with the same value multiset, using the degree of fitness.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .chainalg import QQ
from .core import Hypergraph, restrict, singletons
from .embedded import betti_numbers
from .errors import (DomainMismatch, EmptyHypergraph, ParseError, UserError, ValueOutOfRange)
from .persistence import parse_number

ENUMERATION_BOUND = 5040
DEFAULT_SAMPLES = 200


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def decimal_str(q: Fraction) -> str:
    return f"{float(q):.12g}"


def render(q: Fraction) -> dict:
    return {"value": fraction_str(q), "decimal": decimal_str(q)}


# -- (Rk) reduction and Conn ------------------------------------------------------------

def rk_reduce(h: Hypergraph, k: int) -> Hypergraph:
    """Repeatedly remove a vertex lying in exactly ``k`` hyperedges from all of them.

    Vertices are scanned in canonical order.  A vertex whose hyperedges are
    all singletons is an isolated point and is never removed.
    """
    if k < 1:
        raise UserError("k must be at least 1")
    edges = set(h.edges)
    while True:
        holders: dict = {}
        for e in edges:
            for v in e:
                holders.setdefault(v, []).append(e)
        victim = next((v for v in sorted(holders)
                       if len(holders[v]) == k and any(len(e) > 1 for e in holders[v])), None)
        if victim is None:
            return Hypergraph(frozenset(edges))
        for e in holders[victim]:
            edges.discard(e)
        for e in holders[victim]:
            rest = tuple(x for x in e if x != victim)
            if rest:
                edges.add(rest)


@dataclass
class IndexReport:
    kind: str
    value: Fraction
    terms: list                      # (label, Fraction) pairs summing to value
    exact: bool = True
    method: str = "exact"            # exact | enumerated | sampled
    samples: int | None = None
    seed: int | None = None

    def __post_init__(self):
        if not 0 <= self.value <= 1:
            raise ValueOutOfRange(f"{self.kind} = {self.value} is outside [0, 1]")

    def to_dict(self):
        d = {"index": self.kind, **render(self.value), "exact": self.exact,
             "terms": [{"term": label, **render(q)} for label, q in self.terms]}
        if self.kind != "Conn":
            d.update(method=self.method, samples=self.samples, seed=self.seed)
        return d


def _h0(h: Hypergraph) -> int:
    return betti_numbers(h, QQ)[0] if h else 0


def connectivity_index(h: Hypergraph) -> IndexReport:
    """Conn as an exact rational, with the geometric tail summed in closed form."""
    if not h:
        raise EmptyHypergraph("connectivity index of the empty hypergraph")
    cur = h | singletons(h)
    terms = []
    k = 0
    while True:
        nv = len(cur.universe)
        c = Fraction(_h0(cur), nv) if nv else Fraction(0)
        terms.append((f"k={k}", c / 2 ** (k + 1)))
        k += 1
        if k > len(cur):
            terms.append((f"tail k>={k}", c / 2 ** k))
            break
        cur = rk_reduce(cur, k)
    return IndexReport("Conn", sum((q for _, q in terms), Fraction(0)), terms)


# -- step functions ------------------------------------------------------------------

@dataclass(frozen=True)
class StepFunction1D:
    """Piece ``j`` is the half-open interval ``(b_j, b_{j+1}]``; the first also holds 0."""

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        b = self.breakpoints
        if len(b) < 2 or b[0] != 0 or b[-1] != 1 or any(x >= y for x, y in zip(b, b[1:])):
            raise ValueOutOfRange("breakpoints must increase from 0 to 1")
        if len(self.values) != len(b) - 1 or any(v < 0 for v in self.values):
            raise ValueOutOfRange("need one non-negative value per piece")

    @classmethod
    def constant(cls, value) -> "StepFunction1D":
        return cls((Fraction(0), Fraction(1)), (Fraction(value),))

    def __call__(self, t) -> Fraction:
        for j, b in enumerate(self.breakpoints[1:]):
            if t <= b:
                return self.values[j]
        raise ValueOutOfRange(f"{t} is outside [0, 1]")

    def refine(self, breaks: Sequence) -> tuple:
        return tuple(self(b) for b in breaks[1:])

    def cells(self):
        b = self.breakpoints
        return [(b[j + 1] - b[j], v) for j, v in enumerate(self.values)]


@dataclass(frozen=True)
class StepFunction2D:
    """Cell ``(j, l)`` is ``(x_j, x_{j+1}] x (y_l, y_{l+1}]``; ``values[j][l]``."""

    xs: tuple
    ys: tuple
    values: tuple

    def __post_init__(self):
        for b in (self.xs, self.ys):
            if len(b) < 2 or b[0] != 0 or b[-1] != 1 or any(x >= y for x, y in zip(b, b[1:])):
                raise ValueOutOfRange("grid must increase from 0 to 1")
        if len(self.values) != len(self.xs) - 1 or any(len(r) != len(self.ys) - 1 for r in self.values):
            raise ValueOutOfRange("value grid does not match the breakpoints")
        if any(v < 0 for r in self.values for v in r):
            raise ValueOutOfRange("values must be non-negative")

    def __call__(self, t, s) -> Fraction:
        j = next(j for j, b in enumerate(self.xs[1:]) if t <= b)
        l = next(l for l, b in enumerate(self.ys[1:]) if s <= b)
        return self.values[j][l]

    def cells(self):
        out = []
        for j, row in enumerate(self.values):
            for l, v in enumerate(row):
                out.append(((self.xs[j + 1] - self.xs[j]) * (self.ys[l + 1] - self.ys[l]), v))
        return out


def _common(a, b):
    """Both functions as cell lists on the common refinement."""
    if isinstance(a, StepFunction1D) and isinstance(b, StepFunction1D):
        br = tuple(sorted(set(a.breakpoints) | set(b.breakpoints)))
        w = [br[j + 1] - br[j] for j in range(len(br) - 1)]
        return w, a.refine(br), b.refine(br)
    if isinstance(a, StepFunction2D) and isinstance(b, StepFunction2D):
        xs = tuple(sorted(set(a.xs) | set(b.xs)))
        ys = tuple(sorted(set(a.ys) | set(b.ys)))
        w, va, vb = [], [], []
        for j in range(len(xs) - 1):
            for l in range(len(ys) - 1):
                w.append((xs[j + 1] - xs[j]) * (ys[l + 1] - ys[l]))
                va.append(a(xs[j + 1], ys[l + 1]))
                vb.append(b(xs[j + 1], ys[l + 1]))
        return w, va, vb
    raise DomainMismatch("cannot compare 1-D and 2-D step functions")


def _exact_sqrt(q: Fraction) -> Fraction | None:
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    return Fraction(n, d) if n * n == q.numerator and d * d == q.denominator else None


def fit_value(b1, b2) -> tuple[Fraction, bool]:
    """Degree of fitness and whether it is exact.

    Squared L2 norms are exact.  When all three are rational squares the
    result is exact; otherwise it is a 40-digit decimal converted to a
    fraction.  Both norms zero gives 0; exactly one zero gives 1.
    """
    w, va, vb = _common(b1, b2)
    na = sum((x * v * v for x, v in zip(w, va)), Fraction(0))
    nb = sum((x * v * v for x, v in zip(w, vb)), Fraction(0))
    nd = sum((x * (u - v) ** 2 for x, u, v in zip(w, va, vb)), Fraction(0))
    if na == 0 and nb == 0:
        return Fraction(0), True
    if na == 0 or nb == 0:
        return Fraction(1), True
    roots = [_exact_sqrt(q) for q in (nd, na, nb)]
    if all(r is not None for r in roots):
        return roots[0] / (roots[1] + roots[2]), True
    with localcontext() as ctx:
        ctx.prec = 40
        s = [Decimal(q.numerator) / Decimal(q.denominator) for q in (nd, na, nb)]
        val = s[0].sqrt() / (s[1].sqrt() + s[2].sqrt())
    return min(max(Fraction(val), Fraction(0)), Fraction(1)), False


def fit(b1, b2) -> Fraction:
    return fit_value(b1, b2)[0]


# -- barcodes ------------------------------------------------------------------------

def check_values(h: Hypergraph, phi: Mapping) -> dict:
    extra = sorted(set(phi) - set(h.universe))
    if extra:
        raise ValueOutOfRange(f"values given for unknown vertices {extra}")
    out = {}
    for v in h.universe:
        if v not in phi:
            raise ValueOutOfRange(f"no value for vertex {v}")
        x = Fraction(phi[v])
        if not 0 <= x <= 1:
            raise ValueOutOfRange(f"value {x} of {v} is outside [0, 1]")
        out[v] = x
    return out


def parse_vals(text: str) -> dict:
    """``token value`` per line; ``#`` starts a comment."""
    out = {}
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected 'token value'", no)
        tok, val = parts
        if tok in out:
            raise ParseError(f"vertex {tok} listed twice", no)
        try:
            out[tok] = parse_number(val)
        except ParseError as exc:
            raise ParseError(str(exc), no) from None
    return out


def thresholds(phi: Mapping) -> tuple:
    return tuple(sorted(set(phi.values()) | {Fraction(0), Fraction(1)}))


class _BettiCache:
    """Rational Betti numbers of ``h`` restricted to vertex subsets."""

    def __init__(self, h: Hypergraph):
        self.h = h
        self.memo: dict = {}

    def __call__(self, vertices) -> list:
        key = frozenset(vertices)
        if key not in self.memo:
            sub = restrict(self.h, key)
            self.memo[key] = betti_numbers(sub, QQ) if sub else []
        return self.memo[key]

    def dim(self, vertices, i) -> int:
        b = self(vertices)
        return b[i] if i < len(b) else 0


def _survivors(phi, t):
    return [v for v, x in phi.items() if x >= t]


def _barcode_values(cache, phi, breaks, degrees):
    out = [[] for _ in degrees]
    for t in breaks[1:]:
        alive = _survivors(phi, t)
        for n, i in enumerate(degrees):
            out[n].append(Fraction(cache.dim(alive, i)))
    return out


def _grid_values(cache, phi, psi, xs, ys, degrees):
    out = [[[] for _ in xs[1:]] for _ in degrees]
    for j, t in enumerate(xs[1:]):
        for s in ys[1:]:
            alive = [v for v in phi if phi[v] >= t and psi[v] >= s]
            for n, i in enumerate(degrees):
                out[n][j].append(Fraction(cache.dim(alive, i)))
    return out


def barcode_function(h: Hypergraph, phi: Mapping, i: int, cache=None) -> StepFunction1D:
    """``t -> dim H_i(h(t); Q)`` where ``h(t)`` keeps hyperedges with every vertex value >= t."""
    phi = check_values(h, phi)
    cache = cache or _BettiCache(h)
    br = thresholds(phi)
    return StepFunction1D(br, tuple(_barcode_values(cache, phi, br, [i])[0]))


def barcode_function_2d(h: Hypergraph, phi: Mapping, psi: Mapping, i: int, cache=None) -> StepFunction2D:
    phi, psi = check_values(h, phi), check_values(h, psi)
    cache = cache or _BettiCache(h)
    xs, ys = thresholds(phi), thresholds(psi)
    vals = _grid_values(cache, phi, psi, xs, ys, [i])[0]
    return StepFunction2D(xs, ys, tuple(tuple(r) for r in vals))


# -- value permutations -------------------------------------------------------------------

def permutation_count(values: Sequence) -> int:
    out = math.factorial(len(values))
    for m in Counter(values).values():
        out //= math.factorial(m)
    return out


def multiset_permutations(values: Sequence):
    """Distinct orderings of ``values`` in lexicographic order."""
    counts = sorted(Counter(values).items())
    n = len(values)
    cur: list = []

    def rec():
        if len(cur) == n:
            yield tuple(cur)
            return
        for idx, (v, m) in enumerate(counts):
            if m:
                counts[idx] = (v, m - 1)
                cur.append(v)
                yield from rec()
                cur.pop()
                counts[idx] = (v, m)

    yield from rec()


def _sampled(values: Sequence, rng) -> tuple:
    return tuple(values[k] for k in rng.permutation(len(values)))


def _mean(rows: list) -> tuple:
    return tuple(sum(col, Fraction(0)) / len(rows) for col in zip(*rows))


def _expected_1d(h, phi, degrees, samples, seed, bound, cache):
    verts = list(h.universe)
    vals = [phi[v] for v in verts]
    br = thresholds(phi)
    if permutation_count(vals) <= bound:
        gammas, method = list(multiset_permutations(vals)), "enumerated"
    else:
        gammas = [_sampled(vals, np.random.default_rng([seed, k])) for k in range(samples)]
        method = "sampled"
    per = [[] for _ in degrees]
    for g in gammas:
        for n, row in enumerate(_barcode_values(cache, dict(zip(verts, g)), br, degrees)):
            per[n].append(row)
    return [StepFunction1D(br, _mean(rows)) for rows in per], method, len(gammas)


def expected_barcode(h: Hypergraph, phi: Mapping, i: int, samples: int = DEFAULT_SAMPLES,
                     seed: int = 0, bound: int = ENUMERATION_BOUND) -> StepFunction1D:
    """Mean barcode over value permutations of ``phi`` (enumerated when few)."""
    if samples < 1:
        raise UserError("samples must be at least 1")
    phi = check_values(h, phi)
    return _expected_1d(h, phi, [i], samples, seed, bound, _BettiCache(h))[0][0]


def _combine(kind, fits, method, samples, seed) -> IndexReport:
    terms = [(f"i={i}", q / 2 ** (i + 1)) for i, (q, _) in enumerate(fits)]
    value = sum((q for _, q in terms), Fraction(0))
    return IndexReport(kind, value, terms, all(e for _, e in fits), method, samples, seed)


def differentiation_index(h: Hypergraph, phi: Mapping, samples: int = DEFAULT_SAMPLES,
                          seed: int = 0, bound: int = ENUMERATION_BOUND) -> IndexReport:
    if samples < 1:
        raise UserError("samples must be at least 1")
    if not h:
        raise EmptyHypergraph("differentiation index of the empty hypergraph")
    phi = check_values(h, phi)
    cache = _BettiCache(h)
    degrees = list(range(h.dim + 1))
    br = thresholds(phi)
    actual = [StepFunction1D(br, tuple(r)) for r in _barcode_values(cache, phi, br, degrees)]
    expected, method, count = _expected_1d(h, phi, degrees, samples, seed, bound, cache)
    fits = [fit_value(a, e) for a, e in zip(actual, expected)]
    return _combine("Diff", fits, method, count, seed)


def correlation_index(h: Hypergraph, phi: Mapping, psi: Mapping, samples: int = DEFAULT_SAMPLES,
                      seed: int = 0, bound: int = ENUMERATION_BOUND) -> IndexReport:
    if samples < 1:
        raise UserError("samples must be at least 1")
    if not h:
        raise EmptyHypergraph("correlation index of the empty hypergraph")
    phi, psi = check_values(h, phi), check_values(h, psi)
    cache = _BettiCache(h)
    degrees = list(range(h.dim + 1))
    xs, ys = thresholds(phi), thresholds(psi)
    verts = list(h.universe)
    v1, v2 = [phi[v] for v in verts], [psi[v] for v in verts]

    def grid(rows):
        return StepFunction2D(xs, ys, tuple(tuple(r) for r in rows))

    actual = [grid(g) for g in _grid_values(cache, phi, psi, xs, ys, degrees)]
    if permutation_count(v1) * permutation_count(v2) <= bound:
        pairs = list(itertools.product(multiset_permutations(v1), multiset_permutations(v2)))
        method = "enumerated"
    else:
        pairs = []
        for k in range(samples):
            rng = np.random.default_rng([seed, k])
            pairs.append((_sampled(v1, rng), _sampled(v2, rng)))
        method = "sampled"
    sums = [[[Fraction(0)] * (len(ys) - 1) for _ in xs[1:]] for _ in degrees]
    for g1, g2 in pairs:
        vals = _grid_values(cache, dict(zip(verts, g1)), dict(zip(verts, g2)), xs, ys, degrees)
        for n, rows in enumerate(vals):
            for j, row in enumerate(rows):
                for l, x in enumerate(row):
                    sums[n][j][l] += x
    expected = [grid([[x / len(pairs) for x in row] for row in s]) for s in sums]
    fits = [fit_value(a, e) for a, e in zip(actual, expected)]
    return _combine("Corr", fits, method, len(pairs), seed)
