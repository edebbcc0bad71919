import numpy as np
import pytest

from deepcommuting import analytics as an
from deepcommuting.catalog.groups import build_group
from deepcommuting.catalog.specs import AbelianP, Abelian, Alternating, Cyclic, Heisenberg, Symmetric, spec_order
from deepcommuting.errors import CapExceeded
from deepcommuting.graphs import Graph, deep_commuting_graph, edge_compare, induced_subgraph
from deepcommuting.oracles import default_oracle

_DEEP: dict = {}


def deep(spec) -> Graph:
    if spec not in _DEEP:
        G = build_group(spec)
        _DEEP[spec] = deep_commuting_graph(G, default_oracle(G))
    return _DEEP[spec]


def test_basic_stats():
    s = an.basic_stats(deep(Cyclic(7)))
    assert s.is_complete and s.is_eulerian
    assert not an.basic_stats(deep(Symmetric(3))).is_eulerian
    s = an.basic_stats(deep(AbelianP(3, (1, 1))))
    assert s.is_eulerian and not s.is_complete


def test_dominant_vertices():
    assert an.dominant_vertices(Graph.complete(5)).tolist() == [0, 1, 2, 3, 4]
    G = build_group(AbelianP(3, (2, 1)))
    d = an.dominant_vertices(deep(AbelianP(3, (2, 1))))
    assert sorted(d.tolist()) == sorted(G.element(3 * i, 0) for i in range(3))
    assert an.dominant_vertices(deep(Symmetric(4))).tolist() == [0]


def test_reduced_graph():
    assert an.reduced_graph(Graph.complete(5)).n == 0
    assert an.reduced_graph(deep(AbelianP(3, (1, 1)))).n == 8
    assert an.reduced_graph(deep(Heisenberg(3, 1))).n == 26


def test_components():
    c = an.components_and_diameter(an.reduced_graph(deep(AbelianP(3, (1, 1)))))
    assert c.count == 4 and all(len(x) == 2 for x in c.components)
    assert c.diameter == -1 and not c.connected
    c = an.components_and_diameter(an.reduced_graph(deep(AbelianP(3, (2, 2)))))
    assert c.connected and 0 < c.diameter <= 4


def test_diameter_brute_force():
    g = Graph.cycle(9)
    assert an.components_and_diameter(g).diameter == 4
    path = Graph.from_edges(5, [(i, i + 1) for i in range(4)])
    assert an.components_and_diameter(path).diameter == 4


def test_twin_contraction():
    q, cls = an.twin_contraction(Graph.complete(6))
    assert q.n == 1 and set(cls.tolist()) == {0}
    q, _ = an.twin_contraction(deep(AbelianP(3, (1, 1))))
    assert q.n == 5 and sorted(q.degrees.tolist()) == [1, 1, 1, 1, 4]
    c5 = Graph.cycle(5)
    q, _ = an.twin_contraction(c5)
    assert q.n == 5 and q.edge_count == 5


def test_odd_hole_search():
    c5 = Graph.cycle(5)
    assert sorted(an.odd_hole_search(c5, 5)) == [0, 1, 2, 3, 4]
    assert an.odd_hole_search(Graph.cycle(6), 7) is None
    assert an.odd_hole_search(Graph.cycle(7), 5) is None
    assert len(an.odd_hole_search(Graph.cycle(7), 7)) == 7
    with pytest.raises(ValueError):
        an.odd_hole_search(c5, 6)


def test_odd_hole_in_s6():
    G = build_group(Symmetric(6))
    w = an.odd_hole_search(deep(Symmetric(6)), 5)
    assert w is not None and an.is_odd_hole(deep(Symmetric(6)), w)
    S6 = ["(123)", "(456)", "(12)", "(12)(34)(56)", "(56)"]
    assert an.is_odd_hole(deep(Symmetric(6)), [G.index(x) for x in S6])


def test_no_holes_in_contracted_s5():
    q, _ = an.twin_contraction(an.reduced_graph(deep(Symmetric(5))))
    assert an.odd_hole_search(q, q.n | 1) is None
    assert an.odd_antihole_search(q, q.n | 1) is None


def test_antihole():
    c7 = Graph.cycle(7)
    w = an.odd_antihole_search(c7.complement(), 7)
    assert w is not None and an.is_odd_antihole(c7.complement(), w)


def test_chordal():
    assert an.is_chordal(Graph.complete(4))
    assert not an.is_chordal(Graph.cycle(4))
    assert an.is_chordal(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]))


def test_clique_and_chromatic():
    assert an.clique_and_chromatic(Graph.complete(4)) == (4, 4)
    assert an.clique_and_chromatic(Graph.cycle(5)) == (2, 3)
    q, _ = an.twin_contraction(deep(AbelianP(3, (1, 1))))
    assert an.clique_and_chromatic(q) == (2, 2)
    with pytest.raises(CapExceeded):
        an.clique_and_chromatic(Graph.cycle(70))


def test_perfectness_verdicts():
    assert an.perfectness_verdict(deep(Symmetric(5))).kind == "Perfect"
    v = an.perfectness_verdict(deep(Symmetric(6)))
    assert v.kind == "NotPerfect" and len(v.witness) == 5
    assert an.is_odd_hole(deep(Symmetric(6)), v.witness)
    assert an.perfectness_verdict(Graph.cycle(7).complement()).kind == "NotPerfect"


def test_perfectness_unknown_when_over_budget():
    # a long odd hole that neither the quick search nor the tiny budget can reach
    g = Graph.cycle(31)
    v = an.perfectness_verdict(g, an.PerfectnessBudget(max_vertices=10, max_nodes=100, quick_hole_len=7))
    assert v.kind == "Unknown"
    assert an.perfectness_verdict(g).kind == "NotPerfect"


def test_a8_witness():
    G = build_group(Alternating(8))
    g = deep(Alternating(8))
    vs = [G.index(x) for x in ["(123)", "(456)", "(178)", "(234)", "(567)"]]
    assert an.is_odd_hole(g, vs)


def test_universality_small():
    r = an.universality_embed(Graph.empty(1))
    assert r.spec == Abelian((AbelianP(2, (1, 1)),)) and r.vertex_map == [0]
    r = an.universality_embed(Graph.empty(2))
    assert len(set(r.vertex_map)) == 2 and 0 not in r.vertex_map
    p3 = Graph.from_edges(3, [(0, 1), (1, 2)])
    r = an.universality_embed(p3)
    assert spec_order(r.spec) == 900
    # check independently on the full deep graph
    assert edge_compare(p3, deep(r.spec), np.asarray(r.vertex_map)).empty
    assert edge_compare(p3, induced_subgraph(deep(r.spec), r.vertex_map)).empty
