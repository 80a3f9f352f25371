import pytest
from hypothesis import given

from generators import hypergraphs
from hyperhom.core import (Hypergraph, HypergraphMorphism, SimplicialComplex, apply_functor,
                           associated_complex, complement_hypergraph, faces, format_hypergraph,
                           intersection, make_edge, mv_condition, parse_hypergraph, restrict, simplex,
                           union)
from hyperhom.errors import DuplicateVertexInEdge, InvalidMorphism, UserError

H = Hypergraph.from_edges


def test_parse_basic():
    h = parse_hypergraph("a b\nb c\n")
    assert h.universe == ("a", "b", "c")
    assert h.edges == {("a", "b"), ("b", "c")}


def test_parse_comments_blank_and_duplicates():
    h = parse_hypergraph("# header\n\nb a  # trailing\na b\n\n c \n")
    assert h.edges == {("a", "b"), ("c",)}


def test_parse_duplicate_vertex_reports_line():
    with pytest.raises(DuplicateVertexInEdge, match="line 2"):
        parse_hypergraph("a b\na a\n")


def test_empty_document():
    h = parse_hypergraph("# nothing\n")
    assert not h and h.dim == -1 and h.universe == ()


def test_make_edge_rejects_empty():
    with pytest.raises(Exception):
        make_edge([])


def test_canonical_edge_order():
    h = H([["b", "c"], ["a"], ["a", "b", "c"], ["c"], ["a", "c"]])
    assert h.sorted_edges() == [("a",), ("c",), ("a", "c"), ("b", "c"), ("a", "b", "c")]
    assert h.counts() == [2, 2, 1]


def test_worked_example_closure_and_complement():
    h = H([["v0"], ["v1"], ["v2"], ["v0", "v1"], ["v0", "v1", "v2"]])
    k = associated_complex(h)
    assert len(k) == 7
    assert complement_hypergraph(h).edges == {("v0", "v2"), ("v1", "v2")}


def test_simplex_size():
    assert len(simplex(["a", "b", "c", "d"])) == 15


def test_simplicial_complex_rejects_non_closed():
    with pytest.raises(UserError):
        SimplicialComplex(frozenset({("a", "b")}))


def test_faces_order():
    assert faces(("a", "b", "c")) == [("b", "c"), ("a", "c"), ("a", "b")]


def test_restrict():
    h = H([["a", "b"], ["b", "c"], ["c"]])
    assert restrict(h, ["b", "c"]).edges == {("b", "c"), ("c",)}


def test_mv_condition_examples():
    assert not mv_condition(H([["a", "b"]]), H([["b", "c"]]))
    assert mv_condition(H([["a", "b"], ["b"]]), H([["b", "c"], ["b"]]))
    assert mv_condition(H([["a", "b"]]), H([["c", "d"]]))


def test_format_round_trip():
    h = H([["x", "y"], ["z"]])
    assert parse_hypergraph(format_hypergraph(h)) == h
    assert str(h) == "z\nx y\n"


@given(hypergraphs())
def test_closure_properties(h):
    k = associated_complex(h)
    assert h <= k
    assert k.is_simplicial()
    assert associated_complex(k) == k
    assert complement_hypergraph(h).edges == k.edges - h.edges


@given(hypergraphs(), hypergraphs())
def test_union_intersection_lattice(h, g):
    u, i = union(h, g), intersection(h, g)
    assert h <= u and g <= u and i <= h and i <= g
    kh, kg = associated_complex(h), associated_complex(g)
    assert associated_complex(u).edges == kh.edges | kg.edges
    assert associated_complex(i).edges <= kh.edges & kg.edges
    if mv_condition(h, g):
        assert associated_complex(i).edges == kh.edges & kg.edges


@given(hypergraphs(), hypergraphs())
def test_universal_property(h, g):
    k = associated_complex(union(h, g))
    assert h <= k and associated_complex(h) <= k


def test_morphism_validation_and_functor():
    h = H([["a", "b"], ["b", "c"]])
    g = H([["x", "y"], ["y"]])
    f = HypergraphMorphism(h, g, {"a": "x", "b": "y", "c": "y"})
    assert apply_functor(f).image(("b", "c")) == ("y",)
    with pytest.raises(InvalidMorphism):
        HypergraphMorphism(h, H([["x", "y"]]), {"a": "x", "b": "x", "c": "y"})
    g2 = H([["x", "y"], ["y", "z"]])
    f2 = HypergraphMorphism(h, g2, {"a": "x", "b": "y", "c": "z"})
    sm = apply_functor(f2)
    assert sm.image(("a", "b")) == ("x", "y")
    with pytest.raises(InvalidMorphism):
        HypergraphMorphism(h, g2, {"a": "x", "b": "z", "c": "x"})


def test_morphism_composition_and_identity():
    h = H([["a", "b"]])
    ident = HypergraphMorphism.identity(h)
    assert ident.compose(ident).vertex_map == ident.vertex_map
    inc = HypergraphMorphism.inclusion(h, H([["a", "b"], ["b", "c"]]))
    assert inc.image(("a", "b")) == ("a", "b")


def test_collapse_image():
    h = H([["a", "b"]])
    f = HypergraphMorphism(h, H([["x"]]), {"a": "x", "b": "x"})
    assert apply_functor(f).image(("a", "b")) == ("x",)


def test_functor_preserves_identity_and_composition():
    import random

    from generators import random_hypergraph
    rng = random.Random(5)
    for _ in range(50):
        h = random_hypergraph(rng, 4, 4)
        verts = list(h.universe)
        m1 = {v: rng.choice(verts) for v in verts}
        g = Hypergraph(frozenset(tuple(sorted({m1[v] for v in e})) for e in h.edges))
        m2 = {v: rng.choice(verts) for v in g.universe}
        k = Hypergraph(frozenset(tuple(sorted({m2[v] for v in e})) for e in g.edges))
        f1 = HypergraphMorphism(h, g, m1)
        f2 = HypergraphMorphism(g, k, m2)
        comp = apply_functor(f2.compose(f1))
        direct = apply_functor(f2).compose(apply_functor(f1))
        assert comp.vertex_map == direct.vertex_map
        ident = apply_functor(HypergraphMorphism.identity(h))
        assert all(ident.image(s) == s for s in associated_complex(h).edges)
