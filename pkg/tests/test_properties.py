import itertools
import math

import numpy as np
from hypothesis import HealthCheck, given, settings, strategies as st

from deepcommuting import analytics as an
from deepcommuting.catalog.groups import build_group
from deepcommuting.catalog.specs import (
    AbelianP,
    Alternating,
    CoprimeProduct,
    Cyclic,
    Dihedral,
    Heisenberg,
    Quaternion,
    Symmetric,
    format_spec,
    parse_spec,
    spec_order,
)
from deepcommuting.fpgroup import coset_enumerate, load_rep, save_rep
from deepcommuting.catalog import covers
from deepcommuting.graphs import Graph, build_hierarchy, induced_subgraph
from deepcommuting.oracles import default_oracle
from deepcommuting.spin import spin_commute


@st.composite
def p_specs(draw, p=None):
    p = p or draw(st.sampled_from([2, 3, 5]))
    kind = draw(st.sampled_from(["cyc", "abelianp", "dih", "quat", "heis"] if p == 2 else ["cyc", "abelianp", "heis"]))
    if kind == "cyc":
        return Cyclic(p ** draw(st.integers(1, 3)))
    if kind == "abelianp":
        ranks = sorted(draw(st.lists(st.integers(1, 2), min_size=1, max_size=3)), reverse=True)
        return AbelianP(p, tuple(ranks))
    if kind == "dih":
        return Dihedral(2 ** draw(st.integers(3, 5)))
    if kind == "quat":
        return Quaternion(2 ** draw(st.integers(3, 4)))
    return Heisenberg(p, 1) if p > 2 else Dihedral(8)


@st.composite
def small_specs(draw):
    choice = draw(st.integers(0, 3))
    if choice == 0:
        return draw(p_specs())
    if choice == 1:
        return draw(st.sampled_from([Symmetric(3), Symmetric(4), Alternating(4), Alternating(5),
                                     Dihedral(10), Dihedral(12), Quaternion(12)]))
    ps = draw(st.lists(st.sampled_from([2, 3, 5]), min_size=2, max_size=2, unique=True))
    return CoprimeProduct(tuple(draw(p_specs(p)) for p in sorted(ps)))


def small(spec) -> bool:
    return spec_order(spec) <= 400


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, m in zip(pairs, mask) if m])


def brute_is_induced_cycle(g: Graph, vs) -> bool:
    sub = induced_subgraph(g, vs)
    if not all(d == 2 for d in sub.degrees.tolist()):
        return False
    seen, stack = {0}, [0]
    while stack:
        for j in sub.neighbors(stack.pop()).tolist():
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(vs)


def induced_cycles(g: Graph, lengths) -> list[tuple[int, ...]]:
    """Vertex sets (sorted) that induce a cycle."""
    return [vs for L in lengths for vs in itertools.combinations(range(g.n), L) if brute_is_induced_cycle(g, vs)]


@settings(max_examples=60, deadline=None)
@given(small_specs())
def test_spec_round_trip(spec):
    assert parse_spec(format_spec(spec)) == spec


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(small_specs().filter(small), st.data())
def test_group_axioms(spec, data):
    G = build_group(spec)
    assert G.size == spec_order(spec)
    idx = st.integers(0, G.size - 1)
    a, b, c = data.draw(idx), data.draw(idx), data.draw(idx)
    assert G.mul1(G.mul1(a, b), c) == G.mul1(a, G.mul1(b, c))
    assert G.mul1(a, 0) == a == G.mul1(0, a)
    assert G.mul1(a, int(G.inv(a))) == 0
    assert G.size % G.order(a) == 0


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(small_specs().filter(small))
def test_hierarchy_symmetric_and_nested(spec):
    G = build_group(spec)
    h = build_hierarchy(G, default_oracle(G))
    for g in h.as_dict().values():
        A = g.dense()
        assert np.array_equal(A, A.T) and not A.diagonal().any()
    assert h.inclusion_holds()
    st_ = an.basic_stats(h.deep)
    assert st_.is_complete == G.is_cyclic()
    assert st_.is_eulerian == (G.size % 2 == 1)
    # |N[g]| divides |G|
    for d in h.deep.degrees.tolist():
        assert G.size % (d + 1) == 0


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([AbelianP(2, (1, 1)), AbelianP(3, (1, 1)), AbelianP(2, (2, 1)), Dihedral(8),
                        Heisenberg(3, 1), Symmetric(4)]))
def test_cache_round_trip(tmp_path_factory, spec):
    rep = coset_enumerate(covers.schur_cover_presentation(spec))
    path = tmp_path_factory.mktemp("rt") / "x.cover"
    save_rep(path, rep, format_spec(spec))
    back = load_rep(path)
    assert np.array_equal(back.table, rep.table) and back.presentation_hash == rep.presentation_hash


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_induced_cycle_check_matches_brute_force(g):
    # a vertex set induces a cycle iff some cyclic ordering passes the ordered check
    for L in range(3, min(g.n, 6) + 1):
        for vs in itertools.islice(itertools.combinations(range(g.n), L), 30):
            ordered = any(an.is_induced_cycle(g, [vs[0], *rest]) for rest in itertools.permutations(vs[1:]))
            assert ordered == brute_is_induced_cycle(g, vs)


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_odd_hole_search_matches_brute_force(g):
    holes = induced_cycles(g, range(5, g.n + 1, 2))
    found = an.odd_hole_search(g, max(5, g.n | 1))
    assert (found is None) == (not holes)
    if found is not None:
        assert an.is_odd_hole(g, found)
        assert len(found) == min(len(h) for h in holes)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=8), st.data())
def test_twin_blowup_preserves_holes(g, data):
    # duplicate some vertices as true twins, then contract back
    k = data.draw(st.integers(0, g.n))
    extra = data.draw(st.lists(st.integers(0, g.n - 1), min_size=k, max_size=k))
    n2 = g.n + len(extra)
    owner = list(range(g.n)) + extra
    edges = [(i, j) for i in range(n2) for j in range(i + 1, n2)
             if owner[i] == owner[j] or g.has_edge(owner[i], owner[j])]
    big = Graph.from_edges(n2, edges)
    q, cls = an.twin_contraction(big)
    assert q.n <= g.n
    lim = max(5, n2 | 1)
    assert (an.odd_hole_search(big, lim) is None) == (an.odd_hole_search(q, max(5, q.n | 1)) is None)
    assert (an.odd_hole_search(big, lim) is None) == (an.odd_hole_search(g, max(5, g.n | 1)) is None)


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_chordal_matches_brute_force(g):
    assert an.is_chordal(g) == (not induced_cycles(g, range(4, g.n + 1)))


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_clique_chromatic_brute_force(g):
    omega, chi = an.clique_and_chromatic(g)
    A = g.dense()
    best = max(len(vs) for r in range(1, g.n + 1) for vs in itertools.combinations(range(g.n), r)
               if all(A[i, j] for i, j in itertools.combinations(vs, 2)))
    assert omega == best
    proper = next(k for k in range(1, g.n + 1)
                  if any(all(c[i] != c[j] for i, j in g.edges().tolist())
                         for c in itertools.product(range(k), repeat=g.n)))
    assert chi == proper


@settings(max_examples=80, deadline=None)
@given(st.permutations(range(7)), st.permutations(range(7)))
def test_spin_commute_symmetric_and_below_commuting(a, b):
    a, b = tuple(a), tuple(b)
    s = spin_commute(a, b)
    assert s == spin_commute(b, a)
    if s:
        ab = tuple(b[a[i]] for i in range(7))
        ba = tuple(a[b[i]] for i in range(7))
        assert ab == ba


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 60), st.integers(1, 60))
def test_coprime_cyclic_deep_is_complete(m, n):
    if math.gcd(m, n) != 1 or m * n > 400:
        return
    G = build_group(Cyclic(m * n))
    h = build_hierarchy(G, default_oracle(G))
    assert an.basic_stats(h.deep).is_complete
