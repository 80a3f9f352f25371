import random

import pytest
from hypothesis import given, settings

from generators import close_pair, hypergraphs, random_mv_pair
from hyperhom.chainalg import GF, QQ, ZZ, rank
from hyperhom.core import Hypergraph, intersection, mv_condition, simplex, union
from hyperhom.embedded import betti_numbers, embedded_homology
from hyperhom.errors import DegreeOutOfRange, HypothesisViolated, UserError
from hyperhom.mayer_vietoris import (MVRow, connecting_homomorphism, euler_characteristic,
                                     general_sequences, short_exact_check, verify_long_exact)

H = Hypergraph.from_edges


def capped_tetrahedron(j):
    vs = ["v0", "v1", "v2", "v3"]
    face = [v for i, v in enumerate(vs) if i != j] + [f"w{j}"]
    return Hypergraph(simplex(vs).edges | {tuple(sorted(face))})


def test_short_exact_examples():
    assert short_exact_check(H([["a"], ["a", "b"]]), H([["a"], ["a", "c"]]))
    assert short_exact_check(H([["a", "b"]]), H([["c", "d"]]))
    with pytest.raises(HypothesisViolated):
        short_exact_check(H([["a", "b"]]), H([["b", "c"]]))


def test_two_arcs_of_a_circle():
    pts = [["v0"], ["v1"], ["v2"]]
    h = H(pts + [["v0", "v1"], ["v1", "v2"]])
    g = H(pts + [["v0", "v2"]])
    m = connecting_homomorphism(h, g, 1)
    assert m.shape == (3, 1)
    assert rank(m, QQ) == 1
    assert verify_long_exact(h, g).all_exact


def test_disjoint_pair():
    h, g = H([["a", "b"], ["b", "c"], ["a", "c"]]), H([["x"], ["y"]])
    for n in (1, 2):
        m = connecting_homomorphism(h, g, n)
        assert all(x == 0 for r in m.data for x in r)
    rep = verify_long_exact(h, g)
    assert rep.ok
    u = union(h, g)
    bu, bh, bg = betti_numbers(u), betti_numbers(h), betti_numbers(g)
    assert bu[0] == bh[0] + bg[0] and bu[1] == bh[1]


def test_connecting_degree_zero_rejected():
    with pytest.raises(DegreeOutOfRange):
        connecting_homomorphism(H([["a"]]), H([["b"]]), 0)


def test_integral_coefficients_rejected():
    with pytest.raises(UserError):
        verify_long_exact(H([["a"]]), H([["b"]]), ZZ)


def test_capped_tetrahedron():
    hs = [capped_tetrahedron(j) for j in range(4)]
    for a in range(4):
        for b in range(a + 1, 4):
            assert mv_condition(hs[a], hs[b])
            assert verify_long_exact(hs[a], hs[b]).ok
    u = hs[1] | hs[2] | hs[3]
    assert embedded_homology(u, ZZ)[2].signature() == (0, ())
    for j in range(4):
        assert embedded_homology(hs[j], ZZ)[2].signature() == (0, ())


def test_general_sequences_without_hypothesis():
    first, second = general_sequences(H([["a", "b"]]), H([["b", "c"]]))
    assert first.all_exact and second.all_exact
    assert not first.hypothesis_satisfied and not first.ok


def test_general_sequences_with_hypothesis_quotient_vanishes():
    h, g = close_pair(H([["a", "b"], ["b", "c"]]), H([["b", "c", "d"]]))
    first, second = general_sequences(h, g)
    assert first.ok and second.ok
    assert all(p.dim == 0 for p in second.positions if p.spot == "quotient")


@given(hypergraphs(4, 4), hypergraphs(4, 4))
@settings(max_examples=40, deadline=None)
def test_random_pairs_exact(h, g):
    h, g = close_pair(h, g)
    rep = verify_long_exact(h, g)
    assert rep.ok
    assert short_exact_check(h, g)
    first, second = general_sequences(h, g)
    assert first.all_exact and second.all_exact


@given(hypergraphs(4, 4), hypergraphs(4, 4))
@settings(max_examples=30, deadline=None)
def test_general_sequences_always_exact(h, g):
    first, second = general_sequences(h, g)
    assert first.all_exact and second.all_exact


def test_euler_characteristic_identity():
    rng = random.Random(9)
    for _ in range(30):
        h, g = random_mv_pair(rng)
        chi = lambda x: euler_characteristic(betti_numbers(x)) if x else 0
        assert chi(intersection(h, g)) + chi(union(h, g)) == chi(h) + chi(g)


def test_splitting_independence_and_zero_composite():
    rng = random.Random(10)
    for _ in range(20):
        h, g = random_mv_pair(rng)
        row = MVRow(h, g)
        for n in range(1, row.top + 1):
            assert row.connecting(n) == row.connecting(n, reverse=True)
            comp = row.connecting(n) @ row.second(n)
            assert all(x == 0 for r in comp.data for x in r)


def test_finite_field_coefficients():
    h, g = close_pair(H([["a", "b"], ["b", "c"]]), H([["a", "c"], ["c", "d"]]))
    assert verify_long_exact(h, g, GF(3)).ok
