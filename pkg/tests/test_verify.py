import csv
import io
import time

import pytest

from deepcommuting import verify
from deepcommuting.catalog.specs import spec_order
from deepcommuting.verify import REGISTRY, Budget, claim, run_claims, select

REQUIRED = [
    "hierarchy.inclusion", "hierarchy.complete_iff_cyclic", "hierarchy.eulerian_iff_odd",
    "abelian.pe_equality", "abelian.dominant", "abelian.connectivity", "abelian.diameter",
    "abelian.disconnection_classification", "abelian.induced_counterexample", "product.strong_product",
    "cover.join_law", "cover.dominant_center", "multiplier.metacyclic", "dihedral.equality",
    "quaternion.self_cover", "heisenberg.equality", "heisenberg.dominant", "heisenberg.connectivity",
    "heisenberg.diameter", "extraspecial.checklist", "pgroup.noncyclic_commutator", "sym.equality",
    "alt.equality", "sym.strictness", "alt.strictness", "sym.induced", "alt.induced", "sym.disjoint",
    "sym.components", "alt.components", "sym.perfect", "alt.perfect", "product.connectivity_nilpotent",
    "universality.embed",
]


@pytest.fixture
def scratch_claims():
    added = []

    def add(id, fn, **kw):
        claim(id, "scratch", "none", **kw)(fn)
        added.append(id)

    yield add
    for id in added:
        REGISTRY.pop(id, None)


def test_registry_covers_required_claims():
    missing = [c for c in REQUIRED if c not in REGISTRY]
    assert not missing
    for c in REGISTRY.values():
        assert c.statement and c.grid


def test_select_patterns():
    ids = [c.id for c in select("heisenberg.*")]
    assert ids == sorted(ids) and len(ids) == 5
    both = [c.id for c in select("sym.equality, alt.equality")]
    assert both == ["alt.equality", "sym.equality"]
    assert select("nothing.here") == []


def test_catalog_bounds():
    cat = verify.catalog()
    assert all(spec_order(s) <= 5040 for s in cat)
    assert len({str(s) for s in cat}) == len(cat)


def test_failing_claim_reports_counterexample(scratch_claims):
    def bad(ctx, out):
        out.check(True)
        out.check(False, pair=[1, 2], why="scratch")

    scratch_claims("zz.bad", bad)
    r = run_claims("zz.bad", Budget(seconds=5)).results[0]
    assert r.status == "fail" and r.counterexample == {"pair": [1, 2], "why": "scratch"}
    assert r.checked == 2


def test_budget_turns_into_skip(scratch_claims):
    def slow(ctx, out):
        while True:
            time.sleep(0.01)
            ctx.tick()

    scratch_claims("zz.slow", slow)
    r = run_claims("zz.slow", Budget(seconds=0.1)).results[0]
    assert r.status == "skipped" and "budget" in r.detail


def test_report_formats(scratch_claims):
    scratch_claims("zz.ok", lambda ctx, out: out.check(True), spot_check=True)
    scratch_claims("zz.no", lambda ctx, out: out.check(False, x=1))
    rep = run_claims("zz.*", Budget(seconds=5))
    assert not rep.ok
    rows = list(csv.DictReader(io.StringIO(rep.to_csv())))
    assert [(r["claim"], r["status"], r["spot_check"]) for r in rows] == [("zz.no", "fail", "no"),
                                                                            ("zz.ok", "pass", "yes")]
    text = rep.to_text()
    assert "PASS (spot-checked)" in text and "counterexample" in text and "1 passed, 1 failed" in text
    assert rep.by_id("zz.ok").status == "pass"


def test_cheap_claims_pass():
    rep = run_claims("dihedral.*,quaternion.*,multiplier.metacyclic,extraspecial.checklist,sym.equality")
    assert rep.ok, rep.to_text()
