"""Executable claims over the group catalog and the report they produce.

Each claim is a named check over a finite parameter grid.  ``run_claims``
selects claims by glob pattern, runs them under a per-claim time budget and
returns a :class:`VerificationReport` (CSV or text).  A claim that runs out
of budget is reported as skipped, never as passed.
"""

from __future__ import annotations

import csv
import fnmatch
import io
import itertools
import json
import math
import platform
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import __version__
from . import analytics as an
from . import spin
from .catalog import covers
from .catalog.groups import GroupHandle, PermGroup, build_group, cycles_of
from .catalog.specs import (
    Abelian,
    AbelianP,
    Alternating,
    CoprimeProduct,
    Cyclic,
    Dihedral,
    Heisenberg,
    Quaternion,
    Symmetric,
    factorize,
    format_spec,
    is_prime,
    parse_spec,
    spec_order,
)
from .errors import BudgetExceeded, CapExceeded
from .fpgroup import CoverCache, central_points, direct_product, enumerate_cached
from .graphs import (
    Graph,
    build_hierarchy,
    deep_commuting_graph,
    edge_compare,
    generalized_join,
    induced_subgraph,
    pack_bool_rows,
    strong_product,
)
from .oracles import AbelianOracle, EngineOracle, SpinOracle, cross_validate, default_oracle

# ---------------------------------------------------------------------------
# parameter grids


def _dominated_ranks(top=(3, 2, 1)) -> list[tuple[int, ...]]:
    out = []
    for k in range(1, len(top) + 1):
        for r in itertools.product(*[range(1, t + 1) for t in top[:k]]):
            if list(r) == sorted(r, reverse=True):
                out.append(tuple(r))
    return out


ABELIAN_PRIMES = (2, 3, 5)
ABELIAN_MAX_ORDER = 30_000
ABELIAN_GRID = [
    AbelianP(p, r)
    for p in ABELIAN_PRIMES
    for r in _dominated_ranks()
    if p ** sum(r) <= ABELIAN_MAX_ORDER
]
NONCYCLIC_ABELIAN = [s for s in ABELIAN_GRID if len(s.ranks) > 1]

# abelian groups with several Sylow subgroups
ABELIAN_PRODUCTS = [
    Abelian([AbelianP(2, a), AbelianP(3, b)] + ([AbelianP(5, (1,))] if c else []))
    for a in [(1,), (2,), (1, 1), (2, 1), (2, 2)]
    for b in [(1,), (1, 1), (2, 1)]
    for c in (False, True)
    if len(a) > 1 or len(b) > 1
]

NILPOTENT_PRODUCTS = [
    CoprimeProduct([Dihedral(8), Cyclic(3)]),
    CoprimeProduct([Dihedral(8), AbelianP(3, (1, 1))]),
    CoprimeProduct([Quaternion(8), Cyclic(9)]),
    CoprimeProduct([Quaternion(8), AbelianP(3, (1, 1))]),
    CoprimeProduct([Heisenberg(3, 1), Cyclic(2)]),
    CoprimeProduct([Heisenberg(3, 1), AbelianP(2, (1, 1))]),
    CoprimeProduct([Dihedral(16), Cyclic(5)]),
]

STRONG_PRODUCT_PAIRS = [
    (Cyclic(2), AbelianP(3, (1, 1))),
    (AbelianP(2, (1, 1)), AbelianP(3, (1, 1))),
    (AbelianP(2, (2, 1)), Cyclic(3)),
    (Dihedral(8), AbelianP(3, (1, 1))),
    (Dihedral(8), Cyclic(9)),
    (Symmetric(4), Cyclic(5)),
    (AbelianP(2, (1, 1)), Heisenberg(3, 1)),
]

DIHEDRAL_N = range(3, 51)
QUATERNION_N = range(2, 51)
HEISENBERG_GRID = [Heisenberg(3, 1), Heisenberg(5, 1), Heisenberg(3, 2)]
JOIN_LAW_MAX = 10_000


def catalog(max_order: int = 5040) -> list:
    """Every catalog group of order at most ``max_order``."""
    specs: list = [Cyclic(n) for n in list(range(1, 13)) + [30]]
    specs += ABELIAN_GRID
    specs += [Dihedral(2 * n) for n in DIHEDRAL_N]
    specs += [Quaternion(4 * n) for n in QUATERNION_N]
    specs += HEISENBERG_GRID
    specs += [Symmetric(n) for n in range(3, 8)]
    specs += [Alternating(n) for n in range(3, 9)]
    specs += ABELIAN_PRODUCTS[:6] + NILPOTENT_PRODUCTS
    specs += [CoprimeProduct([Symmetric(3), Cyclic(5)]), CoprimeProduct([Alternating(5), Cyclic(7)])]
    return [s for s in specs if spec_order(s) <= max_order]


# ---------------------------------------------------------------------------
# budget, context, results


@dataclass(frozen=True)
class Budget:
    seconds: float = 1800.0  # per claim
    max_cosets: int = 1_000_000  # the regular table of abelianp:5:3,2,1 peaks above 400k live cosets
    perfect_vertices: int = 400
    hole_nodes: int = 2_000_000
    spot_samples: int = 200
    disjoint_samples: int = 1000
    seed: int = 1729


class Context:
    """Memoised groups, oracles and graphs shared between claims."""

    def __init__(self, budget: Budget, cache: CoverCache | None = None):
        self.budget = budget
        self.cache = cache
        self.deadline = math.inf
        self._groups: dict[str, GroupHandle] = {}
        self._oracles: dict[str, object] = {}
        self._deep: dict[str, Graph] = {}
        self._hier: dict[str, object] = {}

    def tick(self) -> None:
        if time.monotonic() > self.deadline:
            raise BudgetExceeded(f"claim exceeded {self.budget.seconds:g}s")

    def group(self, spec) -> GroupHandle:
        key = format_spec(spec)
        if key not in self._groups:
            self._groups[key] = build_group(spec)
        return self._groups[key]

    def oracle(self, spec):
        key = format_spec(spec)
        if key not in self._oracles:
            self._oracles[key] = default_oracle(
                self.group(spec), max_cosets=self.budget.max_cosets, cache=self.cache
            )
        return self._oracles[key]

    def engine(self, spec, subgroup=None) -> EngineOracle:
        return EngineOracle(self.group(spec), subgroup=subgroup,
                            max_cosets=self.budget.max_cosets, cache=self.cache)

    def deep(self, spec) -> Graph:
        key = format_spec(spec)
        if key in self._hier:
            return self._hier[key].deep
        if key not in self._deep:
            self.tick()
            self._deep[key] = deep_commuting_graph(self.group(spec), self.oracle(spec))
        return self._deep[key]

    def hierarchy(self, spec):
        key = format_spec(spec)
        if key not in self._hier:
            self.tick()
            self._hier[key] = build_hierarchy(self.group(spec), self.oracle(spec))
            self._deep.pop(key, None)
        return self._hier[key]

    def reduced_components(self, spec, diameters: bool = True) -> an.Components:
        return an.components_and_diameter(an.reduced_graph(self.deep(spec)), diameters)


class Outcome:
    """Collects counterexamples and notes while a claim runs."""

    MAX_FAILURES = 5

    def __init__(self):
        self.failures: list[dict] = []
        self.notes: list[str] = []
        self.checked = 0

    def check(self, ok: bool, **counterexample) -> bool:
        self.checked += 1
        if not ok and len(self.failures) < self.MAX_FAILURES:
            self.failures.append(counterexample)
        return ok

    def note(self, text: str) -> None:
        self.notes.append(text)


@dataclass(frozen=True)
class Claim:
    id: str
    statement: str
    grid: str
    check: Callable[[Context, Outcome], None]
    spot_check: bool = False


@dataclass(frozen=True)
class ClaimResult:
    id: str
    status: str  # pass | fail | skipped
    seconds: float
    checked: int
    detail: str
    counterexample: dict | None = None
    spot_check: bool = False


@dataclass
class VerificationReport:
    results: list[ClaimResult]
    budget: Budget
    versions: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def by_id(self, claim_id: str) -> ClaimResult:
        for r in self.results:
            if r.id == claim_id:
                return r
        raise KeyError(claim_id)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["claim", "status", "spot_check", "checked", "seconds", "detail", "counterexample"])
        for r in self.results:
            w.writerow([
                r.id, r.status, "yes" if r.spot_check else "no", r.checked, f"{r.seconds:.2f}",
                r.detail, json.dumps(r.counterexample, sort_keys=True) if r.counterexample else "",
            ])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [
            f"deepcommuting {self.versions.get('deepcommuting', '?')}  seed={self.budget.seed}  "
            f"per-claim budget={self.budget.seconds:g}s"
        ]
        for r in self.results:
            tag = r.status.upper() + (" (spot-checked)" if r.spot_check else "")
            lines.append(f"{tag:<24} {r.id:<40} {r.seconds:8.2f}s  {r.detail}")
            if r.counterexample:
                lines.append(f"{'':24} counterexample: {json.dumps(r.counterexample, sort_keys=True)}")
        n = {s: sum(r.status == s for r in self.results) for s in ("pass", "fail", "skipped")}
        lines.append(f"{n['pass']} passed, {n['fail']} failed, {n['skipped']} skipped")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# registry

REGISTRY: dict[str, Claim] = {}


def claim(id: str, statement: str, grid: str, spot_check: bool = False):
    def deco(fn):
        REGISTRY[id] = Claim(id, statement, grid, fn, spot_check)
        return fn

    return deco


def select(pattern: str = "*") -> list[Claim]:
    pats = [p.strip() for p in pattern.split(",") if p.strip()] or ["*"]
    return [c for cid, c in sorted(REGISTRY.items()) if any(fnmatch.fnmatchcase(cid, p) for p in pats)]


def run_claims(pattern: str = "*", budget: Budget | None = None, cache: CoverCache | None = None,
               context: Context | None = None, progress: Callable[[ClaimResult], None] | None = None
               ) -> VerificationReport:
    budget = budget or Budget()
    ctx = context or Context(budget, cache)
    results = []
    for c in select(pattern):
        out = Outcome()
        t0 = time.monotonic()
        ctx.deadline = t0 + budget.seconds
        try:
            c.check(ctx, out)
            status = "fail" if out.failures else "pass"
            detail = "; ".join(out.notes)
        except (BudgetExceeded, CapExceeded) as e:
            status, detail = "skipped", f"budget: {e}"
        finally:
            ctx.deadline = math.inf
        if status == "fail":
            detail = f"{len(out.failures)} counterexample(s)" + (f"; {detail}" if detail else "")
        r = ClaimResult(c.id, status, time.monotonic() - t0, out.checked, detail,
                        out.failures[0] if out.failures else None, c.spot_check)
        results.append(r)
        if progress:
            progress(r)
    versions = {"deepcommuting": __version__, "numpy": np.__version__, "python": platform.python_version()}
    try:
        import scipy

        versions["scipy"] = scipy.__version__
    except ImportError:  # pragma: no cover
        pass
    return VerificationReport(results, budget, versions)


# ---------------------------------------------------------------------------
# helpers


def _first_extra_edge(a: Graph, b: Graph) -> tuple[int, int] | None:
    """An edge of ``a`` missing from ``b`` (same vertex order), or None."""
    diff = a.rows & ~b.rows
    hit = np.flatnonzero(diff.any(axis=1))
    if hit.size == 0:
        return None
    i = int(hit[0])
    w = int(np.flatnonzero(diff[i])[0])
    j = 64 * w + (int(diff[i, w]) & -int(diff[i, w])).bit_length() - 1
    return i, j


def _pair(G: GroupHandle, i: int, j: int) -> list[str]:
    return [G.label(int(i)), G.label(int(j))]


def _equal(out: Outcome, G: GroupHandle, a: Graph, b: Graph, what: str) -> bool:
    for x, y, tag in ((a, b, "only in first"), (b, a, "only in second")):
        e = _first_extra_edge(x, y)
        if e is not None:
            return out.check(False, spec=format_spec(G.spec), relation=what, edge=_pair(G, *e), side=tag)
    return out.check(True)


def _included(out: Outcome, G: GroupHandle, a: Graph, b: Graph, what: str) -> bool:
    e = _first_extra_edge(a, b)
    return out.check(e is None, spec=format_spec(G.spec), relation=what,
                     edge=_pair(G, *e) if e else None)


def _strict(out: Outcome, G: GroupHandle, a: Graph, b: Graph, what: str) -> bool:
    ok = _first_extra_edge(a, b) is None and _first_extra_edge(b, a) is not None
    return out.check(ok, spec=format_spec(G.spec), relation=what)


def _spec(text: str):
    return parse_spec(text)


def _embed_perm_group(big: PermGroup, small: PermGroup) -> np.ndarray:
    """Indices in ``big`` of ``small``'s elements (extra points fixed)."""
    m, n = small.n, big.n
    ext = np.concatenate([small.perms, np.tile(np.arange(m, n), (small.size, 1))], axis=1)
    return big.lookup(ext)


def _supports(G: PermGroup) -> np.ndarray:
    moved = G.perms != np.arange(G.n)
    return moved @ (1 << np.arange(G.n))


def _perm_group_n(spec) -> int:
    return spec.n


# ---------------------------------------------------------------------------
# hierarchy-wide claims


@claim("hierarchy.inclusion", "E(P) <= E(Pe) <= E(deep) <= E(commuting)", "catalog, order <= 5040")
def _inclusion(ctx: Context, out: Outcome) -> None:
    for s in catalog():
        h = ctx.hierarchy(s)
        G = ctx.group(s)
        _included(out, G, h.power, h.enhanced, "P <= Pe")
        _included(out, G, h.enhanced, h.deep, "Pe <= deep")
        _included(out, G, h.deep, h.commuting, "deep <= commuting")
    out.note(f"{len(catalog())} groups")


@claim("hierarchy.complete_iff_cyclic", "deep graph complete iff G cyclic; reduced graph non-empty otherwise",
       "catalog, order <= 5040")
def _complete(ctx: Context, out: Outcome) -> None:
    for s in catalog():
        G, g = ctx.group(s), ctx.deep(s)
        st = an.basic_stats(g)
        cyc = G.is_cyclic()
        out.check(st.is_complete == cyc, spec=format_spec(s), complete=st.is_complete, cyclic=cyc)
        if not cyc:
            out.check(an.reduced_graph(g).n > 0, spec=format_spec(s), reduced="empty")


@claim("hierarchy.eulerian_iff_odd", "deep graph Eulerian iff |G| odd", "catalog, order <= 5040")
def _eulerian(ctx: Context, out: Outcome) -> None:
    for s in catalog():
        st = an.basic_stats(ctx.deep(s))
        odd = spec_order(s) % 2 == 1
        out.check(st.is_eulerian == odd, spec=format_spec(s), eulerian=st.is_eulerian, order=spec_order(s))


@claim("hierarchy.closed_neighbourhood_divides", "|N[g]| divides |G| in the deep graph",
       "catalog, order <= 5040")
def _divides(ctx: Context, out: Outcome) -> None:
    for s in catalog():
        G, g = ctx.group(s), ctx.deep(s)
        bad = np.flatnonzero(G.size % (g.degrees + 1))
        out.check(bad.size == 0, spec=format_spec(s),
                  vertex=G.label(int(bad[0])) if bad.size else None)


# ---------------------------------------------------------------------------
# abelian groups


def _r(spec: AbelianP, i: int) -> int:
    return spec.ranks[i] if i < len(spec.ranks) else 0


@claim("abelian.oracle_agreement", "closed-form abelian rule agrees with the enumerated cover on all pairs",
       "p in {2,3,5}, ranks dominated by [3,2,1]")
def _abelian_agree(ctx: Context, out: Outcome) -> None:
    for s in NONCYCLIC_ABELIAN:
        ctx.tick()
        G = ctx.group(s)
        bad = cross_validate(AbelianOracle(G), ctx.engine(s), G)
        out.check(not bad, spec=format_spec(s), pair=_pair(G, *bad[0]) if bad else None)
    out.note(f"{len(NONCYCLIC_ABELIAN)} groups")


@claim("abelian.pe_equality", "deep = Pe iff elementary abelian", "non-cyclic abelian p-grid")
def _abelian_pe(ctx: Context, out: Outcome) -> None:
    for s in NONCYCLIC_ABELIAN:
        h = ctx.hierarchy(s)
        eq = h.deep == h.enhanced
        out.check(eq == all(r == 1 for r in s.ranks), spec=format_spec(s), equal=eq)


@claim("abelian.dominant", "dominant set = <x1^(p^r2)>, of size p^(r1-r2)", "non-cyclic abelian p-grid")
def _abelian_dominant(ctx: Context, out: Outcome) -> None:
    for s in NONCYCLIC_ABELIAN:
        G = ctx.group(s)
        dom = set(an.dominant_vertices(ctx.deep(s)).tolist())
        want = set(G.cyclic_subgroup(int(G.power(G.generators[0], s.p ** s.ranks[1]))).tolist())
        out.check(dom == want and len(dom) == s.p ** (s.ranks[0] - s.ranks[1]),
                  spec=format_spec(s), dominant=len(dom), expected=len(want))


@claim("abelian.connectivity", "reduced graph disconnected iff r2 = 1", "non-cyclic abelian p-grid")
def _abelian_conn(ctx: Context, out: Outcome) -> None:
    for s in NONCYCLIC_ABELIAN:
        c = ctx.reduced_components(s, diameters=False)
        out.check((not c.connected) == (s.ranks[1] == 1), spec=format_spec(s), components=c.count)


@claim("abelian.diameter", "connected reduced graphs have diameter <= 4",
       "non-cyclic abelian p-grid and abelian products")
def _abelian_diam(ctx: Context, out: Outcome) -> None:
    seen = []
    for s in NONCYCLIC_ABELIAN + ABELIAN_PRODUCTS:
        c = ctx.reduced_components(s)
        if c.connected:
            seen.append(c.diameter)
            out.check(c.diameter <= 4, spec=format_spec(s), diameter=c.diameter)
    out.note(f"diameters seen: {sorted(set(seen))}")


def _sylow_parts(spec) -> list:
    """Sylow subgroups of a nilpotent catalog spec, as specs."""
    if isinstance(spec, Abelian):
        return list(spec.parts)
    if isinstance(spec, CoprimeProduct):
        return [p for f in spec.factors for p in _sylow_parts(f)]
    if isinstance(spec, Cyclic):
        return [AbelianP(p, (e,)) for p, e in factorize(spec.n)]
    return [spec]


def _is_cyclic_spec(spec) -> bool:
    return isinstance(spec, Cyclic) or (isinstance(spec, AbelianP) and len(spec.ranks) == 1)


@claim("abelian.disconnection_classification",
       "reduced graph of a non-cyclic abelian group is disconnected iff A = cyclic x elementary abelian p-group",
       "abelian p-grid and products over 2, 3, 5")
def _abelian_classify(ctx: Context, out: Outcome) -> None:
    for s in NONCYCLIC_ABELIAN + ABELIAN_PRODUCTS:
        parts = _sylow_parts(s)
        noncyc = [q for q in parts if not _is_cyclic_spec(q)]
        predicted = len(noncyc) == 1 and noncyc[0].ranks[1] == 1
        c = ctx.reduced_components(s, diameters=False)
        out.check((not c.connected) == predicted, spec=format_spec(s), components=c.count)


@claim("abelian.induced_counterexample",
       "deep(C9 x C9) restricted to its order-3 subgroup differs from deep(C3 x C3)", "p = 3")
def _induced_counter(ctx: Context, out: Outcome) -> None:
    big, small = AbelianP(3, (2, 2)), AbelianP(3, (1, 1))
    B, S = ctx.group(big), ctx.group(small)
    H = np.asarray([B.element(3 * a, 3 * b) for a in range(3) for b in range(3)])
    img = induced_subgraph(ctx.deep(big), H)
    ref = ctx.deep(small)
    bij = [S.element(a, b) for a in range(3) for b in range(3)]
    diff = edge_compare(img, ref, bij)
    out.check(not diff.empty, spec=format_spec(big), note="restriction equals the subgroup graph")
    out.check(img.edge_count == 36, spec=format_spec(big), restricted_edges=img.edge_count)
    out.check(ref.edge_count == 12, spec=format_spec(small), edges=ref.edge_count)
    out.note(f"restriction has {img.edge_count} edges (complete), subgroup graph {ref.edge_count}")


# ---------------------------------------------------------------------------
# products and nilpotent groups


def _cover_presentation(spec):
    if _is_cyclic_spec(spec):
        return covers.cyclic_presentation(spec_order(spec))
    p = covers.schur_cover_presentation(spec)
    if isinstance(p, covers.SelfCover):
        raise ValueError(f"{format_spec(spec)} has no proper cover presentation")
    return p


def _cover_images(spec, G):
    if _is_cyclic_spec(spec):
        return [G.generators[0]]
    return covers.projection_images(spec, G, _cover_presentation(spec))


@claim("product.strong_product",
       "deep(G x H) = deep(G) strong-product deep(H) for coprime |G|, |H| (product cover enumerated directly)",
       "seven coprime pairs")
def _strong(ctx: Context, out: Outcome) -> None:
    for a, b in STRONG_PRODUCT_PAIRS:
        ctx.tick()
        spec = CoprimeProduct([a, b])
        P = ctx.group(spec)
        A, B = P.factors
        pres = direct_product(_cover_presentation(a), _cover_presentation(b))
        imgs = [P.element(int(x), 0) for x in _cover_images(a, A)]
        imgs += [P.element(0, int(y)) for y in _cover_images(b, B)]
        direct = deep_commuting_graph(P, EngineOracle(P, pres, imgs, (), max_cosets=ctx.budget.max_cosets,
                                                      cache=ctx.cache))
        sp = strong_product(ctx.deep(a), ctx.deep(b))
        bij = [P.element(i, j) for i in range(A.size) for j in range(B.size)]
        diff = edge_compare(sp, direct, bij)
        out.check(diff.empty, spec=format_spec(spec),
                  only_in_product=diff.only_in_a[:1], only_in_direct=diff.only_in_b[:1])


@claim("product.connectivity_nilpotent",
       "two non-cyclic Sylows => connected; exactly one => connected iff that Sylow's reduced graph is",
       "abelian products and nilpotent products with dihedral/quaternion/Heisenberg Sylows")
def _nilpotent(ctx: Context, out: Outcome) -> None:
    for s in ABELIAN_PRODUCTS + NILPOTENT_PRODUCTS:
        parts = _sylow_parts(s)
        noncyc = [q for q in parts if not _is_cyclic_spec(q)]
        conn = ctx.reduced_components(s, diameters=False).connected
        if len(noncyc) >= 2:
            out.check(conn, spec=format_spec(s), expected="connected")
        elif len(noncyc) == 1:
            sub = ctx.reduced_components(noncyc[0], diameters=False).connected
            out.check(conn == sub, spec=format_spec(s), connected=conn, sylow_connected=sub)


# ---------------------------------------------------------------------------
# covers: join law, centre, multipliers


def _join_law_groups() -> list:
    out = []
    for s in NONCYCLIC_ABELIAN + [Dihedral(2 * n) for n in DIHEDRAL_N if n % 2 == 0] + HEISENBERG_GRID + [
        Symmetric(4), Symmetric(5), Symmetric(6), Symmetric(7), Alternating(6), Alternating(7)
    ]:
        if spec_order(s) * covers.multiplier_order(s) <= JOIN_LAW_MAX:
            out.append(s)
    return out


@dataclass
class _RegularCover:
    rep: object
    project: np.ndarray  # cover point -> G element
    m: int


def _regular_cover(ctx: Context, spec) -> _RegularCover:
    G = ctx.group(spec)
    pres = _cover_presentation(spec)
    imgs = _cover_images(spec, G)
    rep = enumerate_cached(pres, (), ctx.budget.max_cosets, ctx.cache)
    D = rep.degree
    proj = np.full(D, -1, dtype=np.int64)
    proj[0] = 0
    frontier = np.array([0])
    cols = []
    for k, g in enumerate(imgs):
        cols.append((2 * k, int(g)))
        cols.append((2 * k + 1, int(G.inv(g))))
    while frontier.size:
        nxt = []
        for col, g in cols:
            tgt = rep.table[frontier, col]
            new = proj[tgt] < 0
            proj[tgt[new]] = G.mul(proj[frontier[new]], g)
            nxt.append(np.unique(tgt[new]))
        frontier = np.concatenate(nxt)
    for col, g in cols:  # the map must be a homomorphism on every edge
        if not np.array_equal(proj[rep.table[:, col]], G.mul(proj, g)):
            raise AssertionError(f"{format_spec(spec)}: projection is not well defined")
    return _RegularCover(rep, proj, D // G.size)


def _commuting_graph_of_cover(rep, chunk: int = 1024) -> Graph:
    # x~ y~ = y~ x~  iff  0^(x~ y~) = 0^(y~ x~) in the regular representation
    D = rep.degree
    ar = np.arange(D)
    rows = []
    for s in range(0, D, chunk):
        B = np.zeros((min(chunk, D - s), D), dtype=bool)
        for k in range(B.shape[0]):
            x = s + k
            B[k] = rep.images_under_tree_words(x) == rep.apply(ar, rep.word_of(x))
            B[k, x] = False
        rows.append(pack_bool_rows(B))
    return Graph(np.concatenate(rows))


@claim("cover.join_law", "commuting graph of the cover = deep(G)[K_m, ..., K_m] through the projection",
       f"engine-backed groups with cover order <= {JOIN_LAW_MAX}")
def _join(ctx: Context, out: Outcome) -> None:
    groups = _join_law_groups()
    for s in groups:
        ctx.tick()
        G = ctx.group(s)
        rc = _regular_cover(ctx, s)
        sizes = np.bincount(rc.project, minlength=G.size)
        if not out.check(bool(np.all(sizes == rc.m)), spec=format_spec(s), fibres="uneven"):
            continue
        cover_graph = _commuting_graph_of_cover(rc.rep)
        join = generalized_join(ctx.deep(s), [Graph.complete(rc.m)] * G.size)
        order = np.argsort(rc.project, kind="stable")
        slot = np.empty_like(order)
        slot[order] = np.arange(order.size)  # fibre g occupies slots g*m .. g*m+m-1
        diff = edge_compare(cover_graph, join, slot)
        out.check(diff.empty, spec=format_spec(s), only_in_cover=diff.only_in_a[:1],
                  only_in_join=diff.only_in_b[:1])
    out.note(f"{len(groups)} groups")


@claim("cover.dominant_center", "dominant vertices of deep(G) = projection of the cover's centre",
       f"engine-backed groups with cover order <= {JOIN_LAW_MAX}")
def _dominant_center(ctx: Context, out: Outcome) -> None:
    for s in _join_law_groups():
        ctx.tick()
        G = ctx.group(s)
        rc = _regular_cover(ctx, s)
        z = set(rc.project[central_points(rc.rep)].tolist())
        dom = set(an.dominant_vertices(ctx.deep(s)).tolist())
        out.check(z == dom, spec=format_spec(s), dominant=sorted(G.label(x) for x in dom)[:5],
                  projected_centre=sorted(G.label(x) for x in z)[:5])


@claim("multiplier.metacyclic", "|M(D_2n)| = 2 iff n even, else 1; |M(Q_4n)| = 1", "n <= 50")
def _metacyclic(ctx: Context, out: Outcome) -> None:
    for n in range(2, 51):
        if n >= 3:
            k = covers.metacyclic_multiplier_order(covers.dihedral_params(n))
            out.check(k == (2 if n % 2 == 0 else 1), family="dihedral", n=n, k=k)
        k = covers.metacyclic_multiplier_order(covers.quaternion_params(n))
        out.check(k == 1, family="quaternion", n=n, k=k)


@claim("multiplier.enumerated", "enumerated cover order = |G| * |M(G)|",
       "engine-backed groups with cover order <= 1e5")
def _enumerated(ctx: Context, out: Outcome) -> None:
    for s in NONCYCLIC_ABELIAN + [Dihedral(2 * n) for n in DIHEDRAL_N if n % 2 == 0] + HEISENBERG_GRID + [
        Symmetric(n) for n in range(4, 8)
    ] + [Alternating(6), Alternating(7)]:
        want = spec_order(s) * covers.multiplier_order(s)
        if want > 100_000:
            continue
        ctx.tick()
        rep = enumerate_cached(_cover_presentation(s), (), ctx.budget.max_cosets, ctx.cache)
        out.check(rep.degree == want, spec=format_spec(s), degree=rep.degree, expected=want)


# ---------------------------------------------------------------------------
# dihedral, quaternion, Heisenberg, extraspecial, p-groups


@claim("dihedral.equality", "deep(D_2n) = Pe(D_2n) for even n", "even n <= 50")
def _dihedral(ctx: Context, out: Outcome) -> None:
    for n in DIHEDRAL_N:
        if n % 2 == 0:
            s = Dihedral(2 * n)
            h = ctx.hierarchy(s)
            _equal(out, ctx.group(s), h.deep, h.enhanced, "deep = Pe")


@claim("dihedral.odd_self_cover", "deep(D_2n) = commuting graph for odd n", "odd n <= 50")
def _dihedral_odd(ctx: Context, out: Outcome) -> None:
    for n in DIHEDRAL_N:
        if n % 2:
            s = Dihedral(2 * n)
            h = ctx.hierarchy(s)
            _equal(out, ctx.group(s), h.deep, h.commuting, "deep = commuting")


@claim("quaternion.self_cover", "M(Q_4n) = 1 and deep(Q_4n) = commuting graph", "n <= 50")
def _quaternion(ctx: Context, out: Outcome) -> None:
    for n in QUATERNION_N:
        s = Quaternion(4 * n)
        out.check(covers.multiplier_order(s) == 1, spec=format_spec(s), multiplier=covers.multiplier_order(s))
        h = ctx.hierarchy(s)
        _equal(out, ctx.group(s), h.deep, h.commuting, "deep = commuting")


@claim("heisenberg.equality", "deep = Pe iff k = 1; Pe < deep < commuting for k >= 2",
       "(p,k) in {(3,1),(5,1),(3,2)}")
def _heis_eq(ctx: Context, out: Outcome) -> None:
    for s in HEISENBERG_GRID:
        h = ctx.hierarchy(s)
        G = ctx.group(s)
        if s.k == 1:
            _equal(out, G, h.deep, h.enhanced, "deep = Pe")
        else:
            _strict(out, G, h.enhanced, h.deep, "Pe < deep")
        _strict(out, G, h.deep, h.commuting, "deep < commuting")


@claim("heisenberg.dominant", "the only dominant vertex is e", "(p,k) in {(3,1),(5,1),(3,2)}")
def _heis_dom(ctx: Context, out: Outcome) -> None:
    for s in HEISENBERG_GRID:
        d = an.dominant_vertices(ctx.deep(s)).tolist()
        out.check(d == [0], spec=format_spec(s), dominant=len(d))


@claim("heisenberg.connectivity", "reduced graph disconnected iff k = 1", "(p,k) in {(3,1),(5,1),(3,2)}")
def _heis_conn(ctx: Context, out: Outcome) -> None:
    for s in HEISENBERG_GRID:
        c = ctx.reduced_components(s, diameters=False)
        out.check((not c.connected) == (s.k == 1), spec=format_spec(s), components=c.count)


@claim("heisenberg.diameter", "reduced graph diameter <= 4 for k >= 2", "(3,2)")
def _heis_diam(ctx: Context, out: Outcome) -> None:
    for s in HEISENBERG_GRID:
        if s.k >= 2:
            c = ctx.reduced_components(s)
            out.check(c.connected and c.diameter <= 4, spec=format_spec(s), diameter=c.diameter)
            out.note(f"{format_spec(s)}: diameter {c.diameter}")


@claim("heisenberg.cover_order", "cover order p^(5k) by enumeration", "(3,1)->243, (5,1)->3125, (3,2)->59049")
def _heis_cover(ctx: Context, out: Outcome) -> None:
    for s in HEISENBERG_GRID:
        ctx.tick()
        rep = enumerate_cached(_cover_presentation(s), (), ctx.budget.max_cosets, ctx.cache)
        out.check(rep.degree == s.p ** (5 * s.k), spec=format_spec(s), degree=rep.degree)


@claim("extraspecial.checklist", "deep = Pe for D_8, Q_8 and H_3(Z/p) (p = 3, 5)", "four groups")
def _extraspecial(ctx: Context, out: Outcome) -> None:
    for s in [Dihedral(8), Quaternion(8), Heisenberg(3, 1), Heisenberg(5, 1)]:
        G = ctx.group(s)
        p = 2 if isinstance(s, (Dihedral, Quaternion)) else s.p
        z = G.center
        out.check(z.size == p, spec=format_spec(s), centre=int(z.size))
        h = ctx.hierarchy(s)
        _equal(out, G, h.deep, h.enhanced, "deep = Pe")


def _derived_subgroup(G: GroupHandle) -> np.ndarray:
    comms = set()
    for x in range(G.size):
        ys = np.arange(G.size)
        c = G.mul(G.mul(G.inv(x), G.inv(ys)), G.mul(x, ys))
        comms.update(np.unique(c).tolist())
    return G.closure(sorted(comms - {0})) if comms - {0} else np.array([0])


def _has_quaternion_subgroup(G: GroupHandle) -> bool:
    """Brute force for 2-groups: a of order >= 4, b with b^2 = a^(o/2), a^b = a^-1."""
    orders = G.orders
    for a in np.flatnonzero(orders >= 4):
        half = int(G.power(int(a), int(orders[a]) // 2))
        bs = np.arange(G.size)
        sq = G.mul(bs, bs)
        conj = G.conj(np.full(G.size, a), bs)
        if np.any((sq == half) & (conj == int(G.inv(int(a))))):
            return True
    return False


@claim("pgroup.noncyclic_commutator",
       "non-cyclic p-group without quaternion subgroups, with G' non-cyclic or some g of order > p "
       "meeting G' trivially => Pe strictly inside deep", "catalog p-groups")
def _noncyclic_comm(ctx: Context, out: Outcome) -> None:
    groups = NONCYCLIC_ABELIAN + [Dihedral(8), Dihedral(16), Dihedral(32), Dihedral(64)] + HEISENBERG_GRID
    triggered = 0
    for s in groups:
        if spec_order(s) > 5000:
            continue
        ctx.tick()
        G = ctx.group(s)
        p = factorize(G.size)[0][0]
        if p == 2 and _has_quaternion_subgroup(G):
            continue
        Gd = _derived_subgroup(G)
        Gd_set = set(Gd.tolist())
        cond1 = int(G.orders[Gd].max()) != Gd.size
        cond2 = False
        for g in np.flatnonzero(G.orders > p):
            if set(G.cyclic_subgroup(int(g)).tolist()) & Gd_set == {0}:
                cond2 = True
                break
        if cond1 or cond2:
            triggered += 1
            h = ctx.hierarchy(s)
            _strict(out, G, h.enhanced, h.deep, "Pe < deep")
    out.note(f"condition held for {triggered} groups")


# ---------------------------------------------------------------------------
# symmetric and alternating groups


@claim("sym.equality", "deep(S_n) = Pe(S_n) for n = 4, 5", "n in {4, 5}")
def _sym_eq(ctx: Context, out: Outcome) -> None:
    for n in (4, 5):
        s = Symmetric(n)
        h = ctx.hierarchy(s)
        _equal(out, ctx.group(s), h.deep, h.enhanced, "deep = Pe")


@claim("sym.cross_validate", "spin lifts and the enumerated cover agree on every commuting pair",
       "n in {4, 5, 6}")
def _sym_cross(ctx: Context, out: Outcome) -> None:
    for n in (4, 5, 6):
        ctx.tick()
        G = ctx.group(Symmetric(n))
        bad = cross_validate(SpinOracle(G), ctx.engine(Symmetric(n)), G)
        out.check(not bad, spec=f"sym:{n}", pair=_pair(G, *bad[0]) if bad else None)


@claim("alt.equality", "deep(A_n) = Pe(A_n) for 4 <= n <= 7", "n in 4..7")
def _alt_eq(ctx: Context, out: Outcome) -> None:
    for n in range(4, 8):
        s = Alternating(n)
        h = ctx.hierarchy(s)
        _equal(out, ctx.group(s), h.deep, h.enhanced, "deep = Pe")


def _pair_check(out: Outcome, ctx: Context, spec, a: str, b: str, graph: str, want: bool) -> None:
    G = ctx.group(spec)
    x, y = G.index(a), G.index(b)
    if graph == "deep":
        got = ctx.deep(spec).has_edge(x, y)
    elif graph == "enhanced":
        got = ctx.hierarchy(spec).enhanced.has_edge(x, y)
    else:
        got = G.commutes(x, y)
    out.check(got == want, spec=format_spec(spec), pair=[a, b], graph=graph, expected=want)


@claim("sym.strictness", "Pe = deep < commuting for n = 4, 5; Pe < deep < commuting for n = 6, 7",
       "n in 4..7 plus witness pairs")
def _sym_strict(ctx: Context, out: Outcome) -> None:
    for n in range(4, 8):
        s = Symmetric(n)
        h, G = ctx.hierarchy(s), ctx.group(s)
        if n >= 6:
            _strict(out, G, h.enhanced, h.deep, "Pe < deep")
        _strict(out, G, h.deep, h.commuting, "deep < commuting")
    _pair_check(out, ctx, Symmetric(6), "(123)", "(456)", "deep", True)
    _pair_check(out, ctx, Symmetric(6), "(123)", "(456)", "enhanced", False)
    _pair_check(out, ctx, Symmetric(4), "(12)", "(34)", "commuting", True)
    _pair_check(out, ctx, Symmetric(4), "(12)", "(34)", "deep", False)


@claim("alt.strictness", "Pe = deep < commuting for 4 <= n <= 7; Pe < deep < commuting for n = 8",
       "n in 4..8 plus witness pairs")
def _alt_strict(ctx: Context, out: Outcome) -> None:
    for n in range(4, 8):
        s = Alternating(n)
        h, G = ctx.hierarchy(s), ctx.group(s)
        _strict(out, G, h.deep, h.commuting, "deep < commuting")
    _pair_check(out, ctx, Alternating(6), "(12)(34)", "(13)(24)", "commuting", True)
    _pair_check(out, ctx, Alternating(6), "(12)(34)", "(13)(24)", "deep", False)
    _pair_check(out, ctx, Alternating(8), "(123)", "(456)", "deep", True)
    _pair_check(out, ctx, Alternating(8), "(123)", "(456)", "enhanced", False)
    _pair_check(out, ctx, Alternating(8), "(12)(34)", "(13)(24)", "deep", False)


@claim("sym.induced", "deep(S_n) restricted to S_m equals deep(S_m)", "4 <= m < n <= 7")
def _sym_induced(ctx: Context, out: Outcome) -> None:
    for n in range(5, 8):
        for m in range(4, n):
            big, small = ctx.group(Symmetric(n)), ctx.group(Symmetric(m))
            idx = _embed_perm_group(big, small)
            diff = edge_compare(induced_subgraph(ctx.deep(Symmetric(n)), idx), ctx.deep(Symmetric(m)))
            out.check(diff.empty, spec=f"sym:{n}", subgroup=f"sym:{m}", only_in_restriction=diff.only_in_a[:1],
                      only_in_subgroup=diff.only_in_b[:1])


@claim("alt.induced", "deep(A_7) restricted to A_6 equals deep(A_6)", "A_6 inside A_7")
def _alt_induced(ctx: Context, out: Outcome) -> None:
    big, small = ctx.group(Alternating(7)), ctx.group(Alternating(6))
    idx = _embed_perm_group(big, small)
    diff = edge_compare(induced_subgraph(ctx.deep(Alternating(7)), idx), ctx.deep(Alternating(6)))
    out.check(diff.empty, spec="alt:7", subgroup="alt:6", only_in_restriction=diff.only_in_a[:1],
              only_in_subgroup=diff.only_in_b[:1])


@claim("alt.induced_from_symmetric",
       "deep(S_n) restricted to A_n equals deep(A_n) for n = 4, 5 and differs for n = 6, 7", "n in 4..7")
def _alt_from_sym(ctx: Context, out: Outcome) -> None:
    for n in range(4, 8):
        S, A = ctx.group(Symmetric(n)), ctx.group(Alternating(n))
        idx = S.lookup(A.perms)
        diff = edge_compare(induced_subgraph(ctx.deep(Symmetric(n)), idx), ctx.deep(Alternating(n)))
        out.check(diff.empty == (n not in (6, 7)), spec=f"sym:{n}", equal=diff.empty,
                  example=(diff.only_in_a or diff.only_in_b)[:1])


@claim("sym.disjoint", "disjoint non-trivial s, t in S_n: s ~ t iff one of them is even", "4 <= n <= 7, all pairs")
def _sym_disjoint(ctx: Context, out: Outcome) -> None:
    for n in range(4, 8):
        s = Symmetric(n)
        G, g = ctx.group(s), ctx.deep(s)
        sup, par = _supports(G), G.parities
        for x in range(1, G.size):
            if x % 1024 == 0:
                ctx.tick()
            ys = np.flatnonzero(((sup & sup[x]) == 0) & (sup != 0))
            want = (par[ys] == 0) | (par[x] == 0)
            got = g.row_bool(x)[ys]
            bad = np.flatnonzero(got != want)
            if not out.check(bad.size == 0, spec=format_spec(s),
                             pair=_pair(G, x, ys[bad[0]]) if bad.size else None):
                break


def _random_disjoint_pair(rng, n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    pts = rng.permutation(n)
    k = int(rng.integers(2, n - 1))
    a, b = pts[:k], pts[k:]
    s, t = list(range(n)), list(range(n))
    for src, perm in ((a, s), (b, t)):
        img = rng.permutation(src)
        for i, j in zip(src, img):
            perm[int(i)] = int(j)
    return tuple(s), tuple(t)


@claim("sym.disjoint.spot", "disjoint-permutation rule in S_10 on random pairs (spin lifts)",
       "1000 random disjoint pairs, fixed seed", spot_check=True)
def _sym_disjoint_spot(ctx: Context, out: Outcome) -> None:
    rng = np.random.default_rng(ctx.budget.seed)
    done = 0
    while done < ctx.budget.disjoint_samples:
        s, t = _random_disjoint_pair(rng, 10)
        if s == tuple(range(10)) or t == tuple(range(10)):
            continue
        if done % 100 == 0:
            ctx.tick()
        even = _parity(s) == 0 or _parity(t) == 0
        got = spin.spin_commute(s, t, 10)
        out.check(got == even, spec="sym:10", pair=[_label(s), _label(t)], adjacent=got)
        done += 1
    out.note(f"{done} pairs, seed {ctx.budget.seed}")


def _parity(p) -> int:
    return sum(len(c) - 1 for c in cycles_of(p)) % 2


def _label(p) -> str:
    from .catalog.groups import cycle_label

    return cycle_label(p)


@claim("alt.disjoint", "disjoint non-trivial elements of A_8 are adjacent; disjoint 3-cycles in A_7 are not",
       "A_8 all pairs, A_7 all 3-cycle pairs")
def _alt_disjoint(ctx: Context, out: Outcome) -> None:
    s = Alternating(8)
    G, g = ctx.group(s), ctx.deep(s)
    sup = _supports(G)
    for x in range(1, G.size):
        if x % 1024 == 0:
            ctx.tick()
        ys = np.flatnonzero(((sup & sup[x]) == 0) & (sup != 0))
        bad = ys[~g.row_bool(x)[ys]]
        if not out.check(bad.size == 0, spec="alt:8", pair=_pair(G, x, bad[0]) if bad.size else None):
            break
    s = Alternating(7)
    G, g = ctx.group(s), ctx.deep(s)
    sup = _supports(G)
    three = np.flatnonzero((G.orders == 3) & (np.bitwise_count(sup.astype(np.uint64)) == 3))
    for x in three:
        ys = three[(sup[three] & sup[x]) == 0]
        bad = ys[g.row_bool(int(x))[ys]]
        out.check(bad.size == 0, spec="alt:7", pair=_pair(G, int(x), bad[0]) if bad.size else None)


def _sym_component_formula(n: int) -> int | None:
    if n >= 6 and is_prime(n):
        return math.factorial(n - 2) + 1
    if n >= 6 and is_prime(n - 1):
        return n * math.factorial(n - 3) + 1
    return None


def _alt_component_formula(n: int) -> int | None:
    if n < 8:
        return None
    a, b, c = is_prime(n), is_prime(n - 1), is_prime(n - 2)
    if a and c:
        return math.factorial(n - 2) + n * (n - 1) * math.factorial(n - 4) // 2 + 1
    if a:
        return math.factorial(n - 2) + 1
    if b:
        return n * math.factorial(n - 3) + 1
    if c:
        return n * (n - 1) * math.factorial(n - 4) // 2 + 1
    return 1


@claim("sym.components", "reduced deep(S_n) has (n-2)!+1 components (n prime) or n(n-3)!+1 (n-1 prime)",
       "n in {6, 7}")
def _sym_components(ctx: Context, out: Outcome) -> None:
    for n in (6, 7):
        c = ctx.reduced_components(Symmetric(n), diameters=False)
        want = _sym_component_formula(n)
        out.check(c.count == want, spec=f"sym:{n}", components=c.count, expected=want)
        out.note(f"sym:{n}: {c.count}")


@claim("alt.components", "reduced deep(A_7) is disconnected; reduced deep(A_8) has n(n-3)!+1 components",
       "n in {7, 8}")
def _alt_components(ctx: Context, out: Outcome) -> None:
    c7 = ctx.reduced_components(Alternating(7), diameters=False)
    out.check(c7.count > 1, spec="alt:7", components=c7.count)
    c8 = ctx.reduced_components(Alternating(8), diameters=False)
    want = _alt_component_formula(8)
    out.check(c8.count == want, spec="alt:8", components=c8.count, expected=want)
    out.note(f"alt:7: {c7.count}; alt:8: {c8.count}")


def _transposition_path(n: int, tau: tuple[int, ...], rng) -> list[tuple[int, ...]]:
    """Constructive path from a non-trivial permutation to a transposition."""
    ident = tuple(range(n))

    def mul_pow(p, k):
        out = ident
        for _ in range(k):
            out = tuple(p[i] for i in out)
        return out

    def from_cycles(cs):
        q = list(range(n))
        for c in cs:
            for i in range(len(c)):
                q[c[i]] = c[(i + 1) % len(c)]
        return tuple(q)

    order = math.lcm(*[len(c) for c in cycles_of(tau)])
    path = [tau]
    if order % 2:
        q = factorize(order)[0][0]
        pw = mul_pow(tau, order // q)
        cyc = [c for c in cycles_of(pw) if len(c) > 1]
        path.append(pw)
        lam = from_cycles([cyc[0]])
    else:
        pw = mul_pow(tau, order // 2)
        cyc = [c for c in cycles_of(pw) if len(c) > 1]
        path.append(pw)
        if len(cyc) == 1:
            free = [i for i in range(n) if i not in cyc[0]]
            lam = from_cycles([tuple(free[:2]), tuple(free[2:4])])
        else:
            lam = from_cycles(cyc[:2])
    path.append(lam)
    moved = {i for c in cycles_of(lam) if len(c) > 1 for i in c}
    free = [i for i in range(n) if i not in moved]
    path.append(from_cycles([tuple(free[:2])]))
    return [p for k, p in enumerate(path) if k == 0 or p != path[k - 1]]


def _between_transpositions(n: int, e1, e2) -> list:
    def t(a, b):
        q = list(range(n))
        q[a], q[b] = b, a
        return tuple(q)

    if e1 == e2:
        return []
    s1 = {i for i in range(n) if e1[i] != i}
    s2 = {i for i in range(n) if e2[i] != i}
    rest = [i for i in range(n) if i not in s1 | s2]
    if not s1 & s2:
        mid = list(range(n))
        for a, b in (sorted(s1), sorted(s2), rest[:2]):
            mid[a], mid[b] = b, a
        return [tuple(mid)]
    mid = list(range(n))
    a, b, c = rest[:3]
    mid[a], mid[b], mid[c] = b, c, a
    return [tuple(mid)]


@claim("sym.connected.spot",
       "reduced deep(S_9) is connected: sampled pairs are joined by the constructive transposition path",
       "S_9, sampled pairs, fixed seed", spot_check=True)
def _sym9(ctx: Context, out: Outcome) -> None:
    n = 9
    rng = np.random.default_rng(ctx.budget.seed)
    ident = tuple(range(n))
    samples = 0
    while samples < ctx.budget.spot_samples:
        if samples % 20 == 0:
            ctx.tick()
        u = tuple(int(i) for i in rng.permutation(n))
        v = tuple(int(i) for i in rng.permutation(n))
        if u == ident or v == ident or u == v:
            continue
        pu, pv = _transposition_path(n, u, rng), _transposition_path(n, v, rng)
        walk = pu + _between_transpositions(n, pu[-1], pv[-1]) + list(reversed(pv))
        walk = [p for k, p in enumerate(walk) if k == 0 or p != walk[k - 1]]
        ok = all(p != ident for p in walk)
        for a, b in zip(walk, walk[1:]):
            ok = ok and spin.spin_commute(a, b, n)
        out.check(ok, spec="sym:9", pair=[_label(u), _label(v)], path=[_label(p) for p in walk])
        samples += 1
    out.note(f"{samples} pairs joined, seed {ctx.budget.seed}")


# ---------------------------------------------------------------------------
# perfectness


S6_WITNESS = ["(123)", "(456)", "(12)", "(12)(34)(56)", "(56)"]
A8_WITNESS = ["(123)", "(456)", "(178)", "(234)", "(567)"]


def _perfect_budget(ctx: Context) -> an.PerfectnessBudget:
    return an.PerfectnessBudget(ctx.budget.perfect_vertices, ctx.budget.hole_nodes)


def _verdict(ctx: Context, out: Outcome, spec, want: str) -> an.PerfectnessVerdict:
    v = an.perfectness_verdict(ctx.deep(spec), _perfect_budget(ctx))
    if v.kind == "Unknown":
        raise BudgetExceeded(f"{format_spec(spec)}: {v.report}")
    extra = {"witness": v.witness_labels} if v.kind == "NotPerfect" else {}
    out.check(v.kind == want, spec=format_spec(spec), verdict=v.kind, **extra)
    out.note(f"{format_spec(spec)}: {v.kind}")
    return v


def _witness(ctx: Context, out: Outcome, spec, labels: list[str]) -> None:
    G = ctx.group(spec)
    vs = [G.index(x) for x in labels]
    out.check(an.is_odd_hole(ctx.deep(spec), vs), spec=format_spec(spec), witness=labels)


@claim("sym.perfect", "deep(S_n) perfect iff n <= 5", "n in 4..7")
def _sym_perfect(ctx: Context, out: Outcome) -> None:
    for n in range(4, 8):
        _verdict(ctx, out, Symmetric(n), "Perfect" if n <= 5 else "NotPerfect")
    _witness(ctx, out, Symmetric(6), S6_WITNESS)


@claim("alt.perfect", "deep(A_n) perfect for 4 <= n <= 7", "n in 4..7")
def _alt_perfect(ctx: Context, out: Outcome) -> None:
    for n in range(4, 8):
        _verdict(ctx, out, Alternating(n), "Perfect")


@claim("alt.perfect.a8", "deep(A_8) is not perfect: {(123),(456),(178),(234),(567)} induces a 5-cycle",
       "n = 8")
def _a8_perfect(ctx: Context, out: Outcome) -> None:
    _witness(ctx, out, Alternating(8), A8_WITNESS)
    _verdict(ctx, out, Alternating(8), "NotPerfect")


# ---------------------------------------------------------------------------
# universality


def _all_graphs(n: int) -> Iterable[Graph]:
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for k, e in enumerate(pairs) if mask >> k & 1])


FOUR_VERTEX_SAMPLES = {
    "P4": [(0, 1), (1, 2), (2, 3)],
    "C4": [(0, 1), (1, 2), (2, 3), (3, 0)],
    "K1,3": [(0, 1), (0, 2), (0, 3)],
    "paw": [(0, 1), (1, 2), (2, 0), (2, 3)],
    "4K1": [],
}


@claim("universality.embed", "every graph on <= 3 vertices (and sampled 4-vertex graphs) is an induced "
       "subgraph of the deep graph of a product of C_p x C_p", "all labelled graphs on 1..3 vertices")
def _universality(ctx: Context, out: Outcome) -> None:
    largest = 0
    targets = [(f"{n} vertices, edges {g.edges().tolist()}", g) for n in (1, 2, 3) for g in _all_graphs(n)]
    targets += [(name, Graph.from_edges(4, edges)) for name, edges in FOUR_VERTEX_SAMPLES.items()]
    for name, g in targets:
        ctx.tick()
        try:
            e = an.universality_embed(g, cap=4)  # verifies with edge_compare internally
        except AssertionError as err:
            out.check(False, target=name, error=str(err))
            continue
        largest = max(largest, spec_order(e.spec))
        out.check(True)
    out.note(f"largest group order {largest}")
