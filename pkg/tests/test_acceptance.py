"""End-to-end acceptance checks, one test per criterion.

Each test runs the relevant registered claims on a shared context plus a few
direct checks, records PASS/FAIL and prints a one-line verdict.
"""

import itertools
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE
from deepcommuting import analytics as an
from deepcommuting.catalog.specs import AbelianP, Alternating, Symmetric, spec_order
from deepcommuting.graphs import Graph, edge_compare, induced_subgraph
from deepcommuting.oracles import EngineOracle, SpinOracle
from deepcommuting.verify import NONCYCLIC_ABELIAN, run_claims, select


class Criterion:
    def __init__(self, number: int, ctx):
        self.number = number
        self.ctx = ctx
        self.failures: list[str] = []
        self.notes: list[str] = []
        self.t0 = time.monotonic()

    def claims(self, pattern: str, expect: int | None = None) -> None:
        report = run_claims(pattern, self.ctx.budget, context=self.ctx)
        if expect is not None and len(report.results) != expect:
            self.failures.append(f"{pattern}: expected {expect} claims, ran {len(report.results)}")
        for r in report.results:
            if r.status != "pass":
                self.failures.append(f"{r.id} {r.status}: {r.detail} {r.counterexample or ''}".strip())
            else:
                self.notes.append(f"{r.id} {r.seconds:.1f}s")

    def check(self, ok: bool, what: str) -> None:
        if not ok:
            self.failures.append(what)

    def within(self, seconds: float, what: str) -> None:
        dt = time.monotonic() - self.t0
        self.check(dt <= seconds, f"{what} took {dt:.0f}s, limit {seconds:.0f}s")

    def finish(self) -> None:
        status = "FAIL" if self.failures else "PASS"
        dt = time.monotonic() - self.t0
        detail = "; ".join(self.failures) if self.failures else ", ".join(self.notes)
        ACCEPTANCE[self.number] = (status, f"({dt:.1f}s) {detail}")
        print(f"criterion {self.number}: {status} ({dt:.1f}s) {detail}")
        assert not self.failures, self.failures


@pytest.fixture
def crit(request, ctx):
    return lambda n: Criterion(n, ctx)


def test_criterion_01_inclusion_chain(crit):
    c = crit(1)
    c.claims("hierarchy.inclusion", 1)
    c.within(600, "inclusion chain over the catalog")
    c.finish()


def test_criterion_02_complete_and_eulerian(crit):
    c = crit(2)
    c.claims("hierarchy.complete_iff_cyclic,hierarchy.eulerian_iff_odd", 2)
    c.finish()


def test_criterion_03_abelian_p_groups(crit):
    c = crit(3)
    c.claims("abelian.oracle_agreement,abelian.pe_equality,abelian.dominant,"
             "abelian.connectivity,abelian.diameter", 5)
    # the grid reaches [3,2,1] for every p
    for p in (2, 3, 5):
        c.check(AbelianP(p, (3, 2, 1)) in NONCYCLIC_ABELIAN, f"ranks [3,2,1] missing for p={p}")
    c.finish()


def test_criterion_04_dihedral_quaternion(crit):
    c = crit(4)
    c.claims("multiplier.metacyclic,dihedral.equality,quaternion.self_cover", 3)
    c.finish()


def test_criterion_05_heisenberg(crit):
    c = crit(5)
    c.claims("heisenberg.*", 5)
    c.within(600, "Heisenberg checks including the (3,2) enumeration")
    c.finish()


def test_criterion_06_equalities(crit, ctx):
    c = crit(6)
    for n in (4, 5):
        c.check(isinstance(ctx.oracle(Symmetric(n)), SpinOracle), f"S{n} is not on the spin oracle")
    t = time.monotonic()
    c.claims("sym.equality", 1)
    c.check(time.monotonic() - t < 60, "S4/S5 equality over one minute")
    for n in (6, 7):
        c.check(isinstance(ctx.oracle(Alternating(n)), EngineOracle), f"A{n} is not on the engine oracle")
    c.claims("alt.equality,sym.cross_validate", 2)
    c.within(1800, "symmetric/alternating equalities")
    c.finish()


def test_criterion_07_strictness(crit):
    c = crit(7)
    c.claims("sym.strictness,alt.strictness", 2)
    c.finish()


def test_criterion_08_reduced_components(crit, ctx):
    c = crit(8)
    c.claims("sym.components,alt.components", 2)
    want = {Symmetric(6): 37, Symmetric(7): 121, Alternating(8): 961}
    for s, k in want.items():
        got = ctx.reduced_components(s, diameters=False).count
        c.check(got == k, f"{s}: {got} components, expected {k}")
    c.check(not ctx.reduced_components(Alternating(7), diameters=False).connected, "A7 reduced graph connected")
    c.finish()


def test_criterion_09_perfectness(crit):
    c = crit(9)
    c.claims("sym.perfect,alt.perfect,alt.perfect.a8", 3)
    c.finish()


def test_criterion_10_join_law(crit):
    c = crit(10)
    c.claims("cover.join_law", 1)
    c.finish()


def test_criterion_11_dominant_center(crit):
    c = crit(11)
    c.claims("cover.dominant_center", 1)
    c.finish()


def test_criterion_12_induced_subgraphs(crit, ctx):
    c = crit(12)
    c.claims("sym.induced,alt.induced,abelian.induced_counterexample", 3)
    # the order-3 subgroup of C9 x C9 is a clique; C3 x C3 itself gives 4 triangles on e
    G = ctx.group(AbelianP(3, (2, 2)))
    H = [G.element(3 * a, 3 * b) for a in range(3) for b in range(3)]
    sub = induced_subgraph(ctx.deep(AbelianP(3, (2, 2))), H)
    c.check(sub.edge_count == 36, f"restriction has {sub.edge_count} edges, expected K9 (36)")
    small = ctx.deep(AbelianP(3, (1, 1)))
    c.check(small.edge_count == 12 and len(an.dominant_vertices(small)) == 1,
            f"deep(C3 x C3) has {small.edge_count} edges, expected 12")
    c.finish()


def _graphs_on(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for k, e in enumerate(pairs) if mask >> k & 1])


def test_criterion_13_universality(crit, ctx):
    c = crit(13)
    largest, count = 0, 0
    for n in (1, 2, 3):
        for g in _graphs_on(n):
            res = an.universality_embed(g, cap=4, verify=False)
            G = ctx.group(res.spec)
            deep = ctx.deep(res.spec)
            diff = edge_compare(g, deep, np.asarray(res.vertex_map))
            c.check(diff.empty, f"{g.edges().tolist()} on {n} vertices: {diff}")
            c.check(len(set(res.vertex_map)) == n and max(res.vertex_map) < G.size, "bad vertex map")
            largest = max(largest, spec_order(res.spec))
            count += 1
    c.check(largest <= 900, f"largest group order {largest} exceeds 900")
    c.notes.append(f"{count} graphs, largest order {largest}")
    c.finish()


def test_criterion_14_spot_checks(crit):
    c = crit(14)
    c.claims("sym.connected.spot,sym.disjoint.spot", 2)
    c.check(all(cl.spot_check for cl in select("sym.connected.spot,sym.disjoint.spot")),
            "spot checks not labelled")
    c.finish()
