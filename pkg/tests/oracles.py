"""Independent oracles: classical homology through sympy's Smith normal form,
and brute-force lattice enumeration.  Nothing here calls hyperhom's algebra."""

import itertools

from sympy import Matrix as SMatrix
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.domains import ZZ


def simplices_by_degree(complex_edges):
    out = {}
    for s in complex_edges:
        out.setdefault(len(s) - 1, []).append(tuple(s))
    return {n: sorted(v) for n, v in out.items()}


def boundary(rows, cols) -> SMatrix:
    index = {s: i for i, s in enumerate(rows)}
    m = SMatrix.zeros(len(rows), len(cols))
    for j, s in enumerate(cols):
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            if face in index:
                m[index[face], j] += (-1) ** i
    return m


def _factors(m: SMatrix) -> list:
    if m.rows == 0 or m.cols == 0:
        return []
    return [abs(int(d)) for d in invariant_factors(m, domain=ZZ) if d != 0]


def sympy_homology(complex_edges) -> list:
    """``[(rank, torsion), ...]`` in degrees ``0..dim`` of a simplicial complex over Z."""
    by = simplices_by_degree(complex_edges)
    if not by:
        return []
    top = max(by)
    facs = {n: _factors(boundary(by.get(n - 1, []), by[n])) for n in range(1, top + 1)}
    out = []
    for n in range(top + 1):
        size = len(by.get(n, []))
        r_n = len(facs.get(n, []))
        up = facs.get(n + 1, [])
        out.append((size - r_n - len(up), tuple(sorted(d for d in up if d > 1))))
    return out


def small_vectors(length, bound=2):
    return itertools.product(range(-bound, bound + 1), repeat=length)


def rational_rank(vectors, length) -> int:
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    return SMatrix(vectors).rank()


def in_rational_span(v, vectors) -> bool:
    vectors = [list(x) for x in vectors]
    if not any(v):
        return True
    if not vectors:
        return False
    return SMatrix(vectors).rank() == SMatrix(vectors + [list(v)]).rank()


def chain_boundary(chain: dict) -> dict:
    """Boundary of ``{simplex: coeff}`` by the alternating face formula."""
    out = {}
    for s, c in chain.items():
        for i in range(len(s)):
            if len(s) == 1:
                continue
            f = s[:i] + s[i + 1:]
            out[f] = out.get(f, 0) + (-1) ** i * c
    return {f: c for f, c in out.items() if c}


def extremality_check(h, inf, sup, rng, bound=2, cap=300, extras=3):
    """Brute-force extremality of ``inf`` (largest inside G(h)) and ``sup``
    (smallest containing G(h)) over small-coefficient chains.

    ``inf`` / ``sup`` map degree -> ChainSubspace over the associated complex.
    Returns the number of chains examined.
    """
    from hyperhom.core import associated_complex
    k = associated_complex(h)
    seen = 0
    for n in range(h.dim + 1):
        labels = k.graded(n)
        edges = h.graded(n)
        below = set(h.graded(n - 1))
        if len(edges) <= 4:
            coeff_iter = itertools.product(range(-bound, bound + 1), repeat=len(edges))
        else:
            coeff_iter = ([rng.randint(-bound, bound) for _ in edges] for _ in range(cap))
        for coeffs in coeff_iter:
            chain = {e: c for e, c in zip(edges, coeffs) if c}
            bd = chain_boundary(chain)
            vec = [chain.get(s, 0) for s in labels]
            inside = n == 0 or all(f in below for f in bd)
            # the complex generated by the chain lies in G(h) exactly when its boundary does
            assert inf[n].contains(vec) == inside
            if inside and n:
                lower = k.graded(n - 1)
                assert inf[n - 1].contains([bd.get(s, 0) for s in lower])
            seen += 1
    for _ in range(extras):
        gens = {}
        for n in range(h.dim + 2):
            labels = k.graded(n)
            g = [[int(s == e) for s in labels] for e in h.graded(n)]
            for _ in range(rng.randint(0, 2)):
                if labels:
                    g.append([rng.randint(-bound, bound) for _ in labels])
            gens[n] = g
        # close under the boundary: D_n = span(gens_n) + boundary(gens_{n+1}) (boundary of a boundary is 0)
        closed = {}
        for n in range(h.dim + 1):
            labels = k.graded(n)
            upper = k.graded(n + 1)
            bds = []
            for v in gens.get(n + 1, []):
                bd = chain_boundary({s: c for s, c in zip(upper, v) if c})
                bds.append([bd.get(s, 0) for s in labels])
            closed[n] = gens[n] + bds
        for n in range(h.dim + 1):
            for v in sup[n].basis:
                assert in_rational_span(v, closed[n])
            seen += 1
    return seen
