"""Random instance generators shared by the test modules."""

import random
from fractions import Fraction

from hypothesis import strategies as st

from hyperhom.core import Hypergraph, associated_complex, mv_condition
from hyperhom.persistence import DistanceMatrix

TOKENS = [f"v{i}" for i in range(10)]


def random_hypergraph(rng: random.Random, max_vertices=6, max_edges=8, max_size=None) -> Hypergraph:
    n = rng.randint(1, max_vertices)
    verts = TOKENS[:n]
    edges = set()
    for _ in range(rng.randint(1, max_edges)):
        size = rng.randint(1, min(n, max_size or n))
        edges.add(tuple(sorted(rng.sample(verts, size))))
    return Hypergraph(frozenset(edges))


def random_complex(rng: random.Random, max_vertices=6, max_size=4):
    return associated_complex(random_hypergraph(rng, max_vertices, 6, max_size))


def close_pair(h: Hypergraph, g: Hypergraph):
    """Add edge intersections to both sides until the intersection hypothesis holds."""
    while not mv_condition(h, g):
        meets = set()
        for s in h.edges:
            for t in g.edges:
                m = tuple(v for v in s if v in t)
                if m:
                    meets.add(m)
        h = Hypergraph(h.edges | meets)
        g = Hypergraph(g.edges | meets)
    return h, g


def random_mv_pair(rng: random.Random, max_vertices=5, max_edges=4):
    h = random_hypergraph(rng, max_vertices, max_edges)
    g = random_hypergraph(rng, max_vertices, max_edges)
    return close_pair(h, g)


def random_acyclic(rng: random.Random, max_edges=6) -> Hypergraph:
    """Grow hyperedges along a join forest, so the result reduces to nothing."""
    fresh = iter(TOKENS + [f"w{i}" for i in range(100)])
    edges = [tuple(sorted(next(fresh) for _ in range(rng.randint(1, 3))))]
    for _ in range(rng.randint(0, max_edges - 1)):
        r = rng.random()
        if r < 0.15:
            new = [next(fresh) for _ in range(rng.randint(1, 3))]
        elif r < 0.35:
            parent = rng.choice(edges)
            new = rng.sample(parent, rng.randint(1, len(parent)))
        else:
            parent = rng.choice(edges)
            new = rng.sample(parent, rng.randint(0, len(parent))) + [next(fresh) for _ in range(rng.randint(1, 2))]
        edges.append(tuple(sorted(new)))
    return Hypergraph(frozenset(edges))


def random_distances(rng: random.Random, tokens) -> DistanceMatrix:
    vals = {}
    for i, u in enumerate(tokens):
        for v in tokens[i + 1:]:
            vals[(u, v)] = Fraction(rng.randint(1, 12), rng.randint(1, 3))
    return DistanceMatrix.from_mapping(tokens, vals)


@st.composite
def hypergraphs(draw, max_vertices=5, max_edges=6, min_edges=0):
    n = draw(st.integers(1, max_vertices))
    verts = TOKENS[:n]
    edges = draw(st.lists(st.sets(st.sampled_from(verts), min_size=1), min_size=min_edges, max_size=max_edges))
    return Hypergraph.from_edges(edges)


@st.composite
def complexes(draw, max_vertices=5):
    return associated_complex(draw(hypergraphs(max_vertices, 5)))
