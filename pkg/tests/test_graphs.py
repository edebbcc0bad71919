import json

import numpy as np
import pytest

from deepcommuting.catalog.groups import build_group
from deepcommuting.catalog.specs import AbelianP, Alternating, Cyclic, Dihedral, Symmetric
from deepcommuting.errors import ArityMismatch, BadBijection, UnknownVertex
from deepcommuting.graphs import (
    Graph,
    build_hierarchy,
    commuting_graph,
    edge_compare,
    enhanced_power_graph,
    generalized_join,
    induced_subgraph,
    power_graph,
    strong_product,
    to_dot,
    to_json,
)
from deepcommuting.oracles import default_oracle


def hierarchy(spec):
    G = build_group(spec)
    return G, build_hierarchy(G, default_oracle(G))


def brute_force_power(G) -> set[tuple[int, int]]:
    edges = set()
    for x in range(G.size):
        y = x
        while True:
            y = G.mul1(y, x)
            if y != x:
                edges.add((min(x, y), max(x, y)))
            if y == x:
                break
    return edges


def brute_force_enhanced(G) -> set[tuple[int, int]]:
    edges = set()
    for x in range(G.size):
        for y in range(x + 1, G.size):
            H = G.closure([x, y])
            if any(G.order(g) == H.size for g in H):
                edges.add((x, y))
    return edges


def as_set(g: Graph) -> set[tuple[int, int]]:
    return {tuple(e) for e in g.edges().tolist()}


@pytest.mark.parametrize("spec", [Symmetric(4), Dihedral(12), AbelianP(2, (2, 1)), Cyclic(9)])
def test_power_and_enhanced_brute_force(spec):
    G = build_group(spec)
    assert as_set(power_graph(G)) == brute_force_power(G)
    assert as_set(enhanced_power_graph(G)) == brute_force_enhanced(G)


def test_commuting_graph_brute_force():
    G = build_group(Dihedral(10))
    want = {(x, y) for x in range(G.size) for y in range(x + 1, G.size) if G.mul1(x, y) == G.mul1(y, x)}
    assert as_set(commuting_graph(G)) == want


def test_cyclic_hierarchy():
    _, h = hierarchy(Cyclic(7))
    assert all(g.edge_count == 21 for g in h.as_dict().values())
    # in C6 the power graph misses x^2 - x^3 and x^4 - x^3; the rest are complete
    G, h = hierarchy(Cyclic(6))
    assert h.power.edge_count == 13
    assert [h.enhanced.edge_count, h.deep.edge_count, h.commuting.edge_count] == [15] * 3


def test_s6_edge_only_in_deep():
    G, h = hierarchy(Symmetric(6))
    x, y = G.index("(123)"), G.index("(456)")
    assert h.deep.has_edge(x, y) and h.commuting.has_edge(x, y) and not h.enhanced.has_edge(x, y)
    assert h.inclusion_holds()


def test_d12_pe_equals_deep():
    _, h = hierarchy(Dihedral(12))
    assert edge_compare(h.enhanced, h.deep).empty
    assert h.deep.edge_count < h.commuting.edge_count


def test_s5_pe_equals_deep():
    _, h = hierarchy(Symmetric(5))
    assert edge_compare(h.enhanced, h.deep).empty


def test_induced_subgraph():
    g = Graph.cycle(6)
    assert induced_subgraph(g, [2]).n == 1
    sub = induced_subgraph(g, [0, 1, 2])
    assert as_set(sub) == {(0, 1), (1, 2)}
    with pytest.raises(UnknownVertex):
        induced_subgraph(g, [7])
    with pytest.raises(ValueError):
        induced_subgraph(g, [1, 1])


def test_s6_witness_is_five_cycle():
    G, h = hierarchy(Symmetric(6))
    sub = induced_subgraph(h.deep, ["(123)", "(456)", "(12)", "(12)(34)(56)", "(56)"])
    assert sorted(sub.degrees.tolist()) == [2] * 5 and sub.edge_count == 5


def test_s5_restricted_to_a5():
    G5, h5 = hierarchy(Symmetric(5))
    A5, ha = hierarchy(Alternating(5))
    sub = induced_subgraph(h5.deep, A5.labels)
    assert edge_compare(ha.deep, sub, np.arange(A5.size)).empty


def test_strong_product():
    k6 = strong_product(Graph.complete(2), Graph.complete(3))
    assert k6.edge_count == 15
    c5 = Graph.cycle(5)
    assert edge_compare(strong_product(c5, Graph.complete(1)), c5).empty
    # brute force on a small pair
    a, b = Graph.cycle(4), Graph.from_edges(3, [(0, 1)])
    prod = strong_product(a, b)
    for u in range(12):
        for v in range(12):
            (i, j), (k, l) = divmod(u, 3), divmod(v, 3)
            want = u != v and (i == k or a.has_edge(i, k)) and (j == l or b.has_edge(j, l))
            assert prod.has_edge(u, v) == want


def test_generalized_join():
    g1, g2 = Graph.cycle(4), Graph.from_edges(2, [])
    j = generalized_join(Graph.complete(2), [g1, g2])
    assert j.edge_count == g1.edge_count + g2.edge_count + 8
    c = Graph.cycle(5)
    assert edge_compare(generalized_join(Graph.complete(1), [c]), c).empty
    with pytest.raises(ArityMismatch):
        generalized_join(Graph.complete(2), [c])


def test_edge_compare():
    c = Graph.cycle(5)
    assert edge_compare(c, c).empty
    rot = np.roll(np.arange(5), 1)
    assert edge_compare(c, c, rot).empty
    swap = np.array([1, 0, 2, 3, 4])
    diff = edge_compare(c, c, swap)
    assert not diff.empty
    with pytest.raises(BadBijection):
        edge_compare(c, c, [0, 0, 1, 2, 3])
    with pytest.raises(BadBijection):
        edge_compare(c, c, [0, 1, 2])


def test_emitters():
    g = Graph.from_edges(3, [(0, 1)], ["e", "a", "b"])
    doc = json.loads(to_json(g, "cyc:3", "deep"))
    assert doc["n"] == 3 and doc["edges"] == [[0, 1]] and doc["labels"] == ["e", "a", "b"]
    dot = to_dot(g, "x")
    assert "0 -- 1;" in dot and dot.count("label=") == 3
