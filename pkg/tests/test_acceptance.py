"""Acceptance suite: one check per criterion, each under its time limit.

Run with ``pytest tests/test_acceptance.py -s`` (or ``python3 tests/test_acceptance.py``)
to see one PASS/FAIL line per criterion.
"""

import json
import random
import sys
import time
from fractions import Fraction as F
from itertools import combinations
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from generators import (random_acyclic, random_complex, random_distances, random_hypergraph,  # noqa: E402
                        random_mv_pair)
from hyperhom.acyclicity import (check_acyclic_consequences, cone_augmentation, homology_along,  # noqa: E402
                                 is_acyclic, reduce_to_discrete)
from hyperhom.chainalg import QQ, ZZ  # noqa: E402
from hyperhom.core import Hypergraph, associated_complex, simplex  # noqa: E402
from hyperhom.embedded import (betti_numbers, embedded_homology, infimum_chain,  # noqa: E402
                               sup_homology, supremum_chain)
from hyperhom.indices import connectivity_index, correlation_index, differentiation_index  # noqa: E402
from hyperhom.mayer_vietoris import verify_long_exact  # noqa: E402
from hyperhom.persistence import (DistanceMatrix, barcode, metric_filtration,  # noqa: E402
                                  persistent_betti, stabilized_homology, step_homologies,
                                  structure_map, verify_persistent_mv)
from oracles import extremality_check, sympy_homology  # noqa: E402

H = Hypergraph.from_edges


def sig(groups):
    return [g.signature() for g in groups]


def worked_example():
    h = H([["v0"], ["v1"], ["v2"], ["v0", "v1"], ["v0", "v1", "v2"]])
    assert sig(embedded_homology(h, ZZ)) == [(2, ()), (0, ()), (0, ())]
    assert betti_numbers(h, QQ) == [2, 0, 0]


def inf_sup_isomorphism():
    rng = random.Random(1001)
    for _ in range(500):
        h = random_hypergraph(rng, 6, 8)
        assert sig(embedded_homology(h, ZZ)) == sig(sup_homology(h, ZZ))


def simplicial_specialization():
    rng = random.Random(1002)
    for _ in range(200):
        k = random_complex(rng, 6)
        ours = sig(embedded_homology(k, ZZ))
        assert ours == sympy_homology(sorted(k.edges))


def extremality():
    rng = random.Random(1003)
    for _ in range(200):
        h = random_hypergraph(rng, 4, 5)
        extremality_check(h, infimum_chain(h), supremum_chain(h), rng)


def _capped_tetrahedron(j):
    vs = ["v0", "v1", "v2", "v3"]
    face = [v for i, v in enumerate(vs) if i != j] + [f"w{j}"]
    return Hypergraph(simplex(vs).edges | {tuple(sorted(face))})


def mayer_vietoris():
    rng = random.Random(1005)
    for _ in range(200):
        h, g = random_mv_pair(rng)
        assert verify_long_exact(h, g, QQ).ok
    u = _capped_tetrahedron(1) | _capped_tetrahedron(2) | _capped_tetrahedron(3)
    assert embedded_homology(u, ZZ)[2].signature() == (0, ())


def persistent_mv():
    rng = random.Random(1006)
    for _ in range(50):
        h, g = random_mv_pair(rng, 4, 3)
        dist = random_distances(rng, list((h | g).universe))
        radii = sorted(rng.sample([F(n, 2) for n in range(1, 26)], 4))
        assert verify_persistent_mv(h, g, dist, radii).ok


def _faces_without(i):
    vs = ["v0", "v1", "v2", "v3"]
    return H([c for c in combinations(vs, 3) if vs[i] in c])


def acyclicity():
    assert is_acyclic(H([["v0", "v1", "v2"], ["v1", "v2", "v3"]]))[0]
    for i in range(4):
        assert not is_acyclic(_faces_without(i))[0]
    rng = random.Random(1007)
    for _ in range(200):
        assert check_acyclic_consequences(random_acyclic(rng)).holds
    for _ in range(200):
        _, trace = reduce_to_discrete(random_hypergraph(rng, 5, 5))
        hom = homology_along(trace)
        assert all(x == hom[0] for x in hom)


def cone():
    rng = random.Random(1008)
    for _ in range(100):
        h = random_hypergraph(rng, 5, 5)
        out = cone_augmentation(h, verify=False)
        top = max(out.edges, key=len)
        n = len(top) - 1
        assert is_acyclic(out)[0]
        assert associated_complex(out) == simplex(top)
        before = sig(embedded_homology(h, ZZ)) + [(0, ())] * (n + 1)
        after = sig(embedded_homology(out, ZZ))
        assert after[:n - 1] == before[:n - 1]
        assert after[n - 1] == after[n] == (0, ())


def persistence():
    rng = random.Random(1009)
    for _ in range(100):
        h = random_hypergraph(rng, 4, 5)
        dist = random_distances(rng, list(h.universe))
        crit = dist.critical_values()
        radii = sorted(set(rng.sample(crit, min(3, len(crit))) + [dist.beyond()]))
        f = metric_filtration(h, dist, radii)
        n = len(f.steps)
        assert sig(stabilized_homology(h, dist)) == sig(embedded_homology(h, QQ))
        for deg in range(h.dim + 1):
            homs = step_homologies(f, deg)
            for i in range(n):
                for j in range(i, n):
                    for k in range(j, n):
                        composite = structure_map(homs, j, k) @ structure_map(homs, i, j)
                        assert structure_map(homs, i, k) == composite.map(QQ.coerce)
            beta = persistent_betti(f, deg)
            assert barcode(f, deg).rank_matrix(n) == [
                [beta[i][j] if j >= i else 0 for j in range(n)] for i in range(n)]
    triangle = H([["a", "b"], ["b", "c"], ["a", "c"]])
    d = barcode(metric_filtration(triangle, DistanceMatrix.uniform("abc"), [F(1, 2), F(3, 2)]), 1)
    assert [(iv.birth, iv.death, iv.multiplicity) for iv in d.intervals] == [(F(3, 2), None, 1)]


def indices():
    assert connectivity_index(H([["a", "b"]])).value == F(5, 8)
    assert connectivity_index(H([["a"], ["b"], ["c"]])).value == 1
    rng = random.Random(1010)
    for _ in range(100):
        h = random_hypergraph(rng, 5, 5)
        vs = list(h.universe)
        phi = {v: F(rng.randint(0, 8), 8) for v in vs}
        psi = {v: F(rng.randint(0, 8), 8) for v in vs}
        const, const2 = {v: F(1, 2) for v in vs}, {v: F(1, 3) for v in vs}
        assert differentiation_index(h, const).value == 0
        assert correlation_index(h, const, const2).value == 0
        for rep in (connectivity_index(h), differentiation_index(h, phi, samples=20, seed=3, bound=24),
                    correlation_index(h, phi, psi, samples=20, seed=3, bound=24)):
            assert 0 <= rep.value <= 1
    h = random_hypergraph(random.Random(7), 6, 6)
    phi = {v: F(i, 7) for i, v in enumerate(h.universe)}
    psi = {v: F(7 - i, 7) for i, v in enumerate(h.universe)}

    def dump():
        return json.dumps([differentiation_index(h, phi, samples=30, seed=11, bound=10).to_dict(),
                           correlation_index(h, phi, psi, samples=30, seed=11, bound=10).to_dict()])
    assert dump() == dump()


CRITERIA = [
    ("1 worked example", worked_example, 1),
    ("2 inf/sup isomorphism", inf_sup_isomorphism, 60),
    ("3 simplicial specialization", simplicial_specialization, 60),
    ("4 extremality", extremality, 120),
    ("5 Mayer-Vietoris", mayer_vietoris, 120),
    ("6 persistent Mayer-Vietoris", persistent_mv, 120),
    ("7 acyclicity", acyclicity, 60),
    ("8 cone augmentation", cone, 60),
    ("9 persistence", persistence, 60),
    ("10 indices", indices, 120),
]


def run_criterion(name, check, limit):
    start = time.perf_counter()
    error = None
    try:
        check()
    except AssertionError as exc:
        error = exc
    elapsed = time.perf_counter() - start
    ok = error is None and elapsed < limit
    print(f"{'PASS' if ok else 'FAIL'} criterion {name} ({elapsed:.2f}s, limit {limit}s)")
    return ok, error, elapsed


@pytest.mark.parametrize("name,check,limit", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(name, check, limit, capsys):
    with capsys.disabled():
        ok, error, elapsed = run_criterion(name, check, limit)
    if error is not None:
        raise error
    assert elapsed < limit


if __name__ == "__main__":
    results = [run_criterion(*c)[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
