"""Graph analytics: degrees, dominant vertices, components, diameters, twin
contraction, odd holes/antiholes, exact clique and chromatic numbers,
perfectness verdicts and the universality embedding."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .catalog.specs import Abelian, AbelianP
from .catalog.groups import build_group
from .errors import BudgetExceeded, CapExceeded
from .graphs import Graph, induced_subgraph

# ---------------------------------------------------------------------------
# basic statistics


@dataclass(frozen=True)
class BasicStats:
    degrees: np.ndarray
    is_complete: bool
    is_eulerian: bool


def _csr(g: Graph) -> csr_matrix:
    e = g.edges()
    data = np.ones(2 * len(e), dtype=np.int8)
    r = np.concatenate([e[:, 0], e[:, 1]])
    c = np.concatenate([e[:, 1], e[:, 0]])
    return csr_matrix((data, (r, c)), shape=(g.n, g.n))


def basic_stats(g: Graph) -> BasicStats:
    deg = g.degrees
    complete = bool(np.all(deg == g.n - 1))
    eulerian = bool(np.all(deg % 2 == 0))
    if eulerian and g.n:
        _, lab = connected_components(_csr(g), directed=False)
        eulerian = np.unique(lab[deg > 0]).size <= 1
    return BasicStats(deg, complete, eulerian)


def dominant_vertices(g: Graph) -> np.ndarray:
    return np.flatnonzero(g.degrees == g.n - 1)


def reduced_graph(g: Graph) -> Graph:
    keep = np.flatnonzero(g.degrees != g.n - 1)
    return induced_subgraph(g, keep)


# ---------------------------------------------------------------------------
# twins, components, diameter


def twin_contraction(g: Graph) -> tuple[Graph, np.ndarray]:
    """Contract closed-twin classes.  Returns (quotient, class of each vertex).

    Classes are numbered by their smallest vertex; quotient vertex k is that
    smallest vertex's label.
    """
    if g.n == 0:
        return g, np.zeros(0, dtype=np.int64)
    closed = g.rows.copy()
    idx = np.arange(g.n)
    closed[idx, idx >> 6] |= np.left_shift(np.uint64(1), (idx & 63).astype(np.uint64))
    _, first, inv = np.unique(closed, axis=0, return_index=True, return_inverse=True)
    inv = inv.ravel()
    order = np.argsort(first)  # renumber classes by first vertex
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    cls = rank[inv]
    reps = np.sort(first)
    return induced_subgraph(g, reps), cls


@dataclass(frozen=True)
class Components:
    components: list[np.ndarray]
    diameters: list[int]

    @property
    def count(self) -> int:
        return len(self.components)

    @property
    def connected(self) -> bool:
        return self.count <= 1

    @property
    def diameter(self) -> int:
        """Diameter of the whole graph; -1 if disconnected or empty."""
        if self.count != 1:
            return -1
        return self.diameters[0]


def components_of(g: Graph) -> list[np.ndarray]:
    if g.n == 0:
        return []
    k, lab = connected_components(_csr(g), directed=False)
    order = np.argsort(lab, kind="stable")
    splits = np.cumsum(np.bincount(lab, minlength=k))[:-1]
    comps = np.split(order, splits)
    comps.sort(key=lambda c: int(c[0]))
    return comps


def _max_eccentricity(g: Graph, chunk: int = 256) -> int:
    if g.n <= 1:
        return 0
    A = _csr(g)
    best = 0
    for s in range(0, g.n, chunk):
        D = shortest_path(A, method="D", unweighted=True, directed=False,
                          indices=np.arange(s, min(g.n, s + chunk)))
        best = max(best, int(D[np.isfinite(D)].max()))
    return best


def components_and_diameter(g: Graph, diameters: bool = True) -> Components:
    """Components (sorted by smallest vertex) and the diameter of each.

    Closed twins have identical distances to every other vertex, so the
    diameter is taken on the twin quotient (and is 1 if the quotient is a
    single vertex standing for several twins).
    """
    comps = components_of(g)
    if not diameters:
        return Components(comps, [])
    q, cls = twin_contraction(g)
    sizes = np.bincount(cls, minlength=q.n)
    diams = []
    for c in comps:
        if c.size == 1:
            diams.append(0)
            continue
        qc = np.unique(cls[c])
        if qc.size == 1:
            diams.append(1)
            continue
        d = _max_eccentricity(induced_subgraph(q, qc))
        diams.append(max(d, 1 if np.any(sizes[qc] > 1) else 0))
    return Components(comps, diams)


# ---------------------------------------------------------------------------
# odd holes and antiholes


def _adj_ints(g: Graph) -> list[int]:
    out = []
    for i in range(g.n):
        out.append(int.from_bytes(g.rows[i].tobytes(), "little"))
    return out


class _Counter:
    def __init__(self, budget: int | None):
        self.budget = budget
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExceeded(f"hole search exceeded {self.budget} nodes")


def _hole_dfs(adj: list[int], n: int, length: int, counter: _Counter) -> list[int] | None:
    """Induced cycle on exactly ``length`` vertices, or None.

    The cycle is found rooted at its smallest vertex s, with the second vertex
    smaller than the last one so each cycle is met once.
    """
    for s in range(n):
        higher = ~((1 << (s + 1)) - 1)
        ns = adj[s] & higher
        p1s = ns
        while p1s:
            p1 = (p1s & -p1s).bit_length() - 1
            p1s &= p1s - 1
            res = _extend(adj, [s, p1], higher, ns, length, counter)
            if res:
                return res
    return None


def _extend(adj, path, higher, ns, length, counter):
    # invariant: path is induced and path[2:] avoids N(s)
    counter.tick()
    cand = adj[path[-1]] & higher
    for v in path[:-1]:
        cand &= ~(1 << v)
    for v in path[1:-1]:
        cand &= ~adj[v]
    if len(path) == length - 1:
        cand &= ns & ~((1 << (path[1] + 1)) - 1)
        if cand:
            return path + [(cand & -cand).bit_length() - 1]
        return None
    cand &= ~ns
    while cand:
        v = (cand & -cand).bit_length() - 1
        cand &= cand - 1
        res = _extend(adj, path + [v], higher, ns, length, counter)
        if res:
            return res
    return None


def is_induced_cycle(g: Graph, vs: Sequence[int]) -> bool:
    L = len(vs)
    if L < 3 or len(set(vs)) != L:
        return False
    for a in range(L):
        for b in range(a + 1, L):
            consecutive = b == a + 1 or (a == 0 and b == L - 1)
            if g.has_edge(vs[a], vs[b]) != consecutive:
                return False
    return True


def is_odd_hole(g: Graph, vs: Sequence[int]) -> bool:
    return len(vs) >= 5 and len(vs) % 2 == 1 and is_induced_cycle(g, vs)


def is_odd_antihole(g: Graph, vs: Sequence[int]) -> bool:
    if len(vs) < 5 or len(vs) % 2 == 0 or len(set(vs)) != len(vs):
        return False
    return is_induced_cycle(induced_subgraph(g, list(vs)).complement(), range(len(vs)))


def odd_hole_search(g: Graph, max_len: int, budget: int | None = None, min_len: int = 5) -> list[int] | None:
    """Shortest induced odd cycle with min_len <= L <= max_len, or None."""
    if max_len < 5 or max_len % 2 == 0:
        raise ValueError("max_len must be odd and >= 5")
    adj = _adj_ints(g)
    counter = _Counter(budget)
    for L in range(max(5, min_len | 1), min(max_len, g.n) + 1, 2):
        w = _hole_dfs(adj, g.n, L, counter)
        if w:
            return w
    return None


def odd_antihole_search(g: Graph, max_len: int, budget: int | None = None) -> list[int] | None:
    """Odd antihole of length 7..max_len (length 5 antiholes are 5-holes)."""
    if max_len < 5 or max_len % 2 == 0:
        raise ValueError("max_len must be odd and >= 5")
    if max_len < 7:
        return odd_hole_search(g, 5, budget)
    return odd_hole_search(g.complement(), max_len, budget, min_len=7)


# ---------------------------------------------------------------------------
# chordality


def is_chordal(g: Graph) -> bool:
    """Maximum cardinality search + perfect elimination ordering check."""
    n = g.n
    if n <= 3:
        return True
    adj = [set(g.neighbors(i).tolist()) for i in range(n)]
    weight = [0] * n
    numbered = [False] * n
    heap = [(0, i) for i in range(n)]
    order = []
    while heap:
        w, v = heapq.heappop(heap)
        if numbered[v] or -w != weight[v]:
            continue
        numbered[v] = True
        order.append(v)
        for u in adj[v]:
            if not numbered[u]:
                weight[u] += 1
                heapq.heappush(heap, (-weight[u], u))
    pos = {v: i for i, v in enumerate(order)}
    # order reversed is a PEO iff for each v, earlier neighbours form a clique
    for v in order:
        earlier = [u for u in adj[v] if pos[u] < pos[v]]
        if not earlier:
            continue
        parent = max(earlier, key=lambda u: pos[u])
        for u in earlier:
            if u != parent and u not in adj[parent]:
                return False
    return True


# ---------------------------------------------------------------------------
# clique and chromatic number


def _max_clique(adj: list[int], cand: int, size: int, best: list[int]) -> None:
    if not cand:
        best[0] = max(best[0], size)
        return
    # greedy colouring bound
    if size + _greedy_colour_bound(adj, cand) <= best[0]:
        return
    while cand:
        if size + bin(cand).count("1") <= best[0]:
            return
        v = cand.bit_length() - 1
        _max_clique(adj, cand & adj[v], size + 1, best)
        cand &= ~(1 << v)


def _greedy_colour_bound(adj: list[int], cand: int) -> int:
    colours = 0
    rest = cand
    while rest:
        colours += 1
        avail = rest
        while avail:
            v = (avail & -avail).bit_length() - 1
            rest &= ~(1 << v)
            avail &= ~(1 << v) & ~adj[v]
    return colours


def clique_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    best = [1]
    _max_clique(_adj_ints(g), (1 << g.n) - 1, 0, best)
    return best[0]


def _colourable(adj: list[int], n: int, k: int) -> bool:
    colour = [-1] * n

    def pick() -> int:
        best, key = -1, (-1, -1)
        for v in range(n):
            if colour[v] >= 0:
                continue
            seen = {colour[u] for u in range(n) if adj[v] >> u & 1 and colour[u] >= 0}
            kk = (len(seen), bin(adj[v]).count("1"))
            if kk > key:
                best, key = v, kk
        return best

    def go(done: int, used: int) -> bool:
        if done == n:
            return True
        v = pick()
        forbidden = {colour[u] for u in range(n) if adj[v] >> u & 1 and colour[u] >= 0}
        for c in range(min(k, used + 1)):
            if c in forbidden:
                continue
            colour[v] = c
            if go(done + 1, max(used, c + 1)):
                return True
            colour[v] = -1
        return False

    return go(0, 0)


def chromatic_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    adj = _adj_ints(g)
    k = clique_number(g)
    while not _colourable(adj, g.n, k):
        k += 1
    return k


def clique_and_chromatic(g: Graph, cap: int = 64) -> tuple[int, int]:
    if g.n > cap:
        raise CapExceeded(f"exact solver capped at {cap} vertices (got {g.n})")
    return clique_number(g), chromatic_number(g)


# ---------------------------------------------------------------------------
# perfectness


@dataclass(frozen=True)
class Perfect:
    contracted_size: int
    search_bound: int
    certificate: str

    kind = "Perfect"


@dataclass(frozen=True)
class NotPerfect:
    witness: list[int]
    witness_labels: list[str]
    shape: str  # "odd-hole" or "odd-antihole"

    kind = "NotPerfect"


@dataclass(frozen=True)
class Unknown:
    report: str

    kind = "Unknown"


PerfectnessVerdict = Perfect | NotPerfect | Unknown


@dataclass(frozen=True)
class PerfectnessBudget:
    max_vertices: int = 400  # per component of the reduced twin quotient
    max_nodes: int = 2_000_000
    quick_hole_len: int = 7


def perfectness_verdict(g: Graph, budget: PerfectnessBudget | None = None) -> PerfectnessVerdict:
    """Twin-contract, drop dominant vertices, then certify component by component.

    A component is certified perfect if it is chordal (chordal graphs have no
    hole of length >= 4, and every antihole of length >= 6 contains a 4-hole)
    or if exhaustive odd-hole and odd-antihole searches come back empty.
    """
    budget = budget or PerfectnessBudget()
    q, cls = twin_contraction(g)
    reps = np.unique(cls, return_index=True)[1]
    keep = np.flatnonzero(q.degrees != q.n - 1)
    core = induced_subgraph(q, keep)
    comps = components_of(core)
    counter = _Counter(budget.max_nodes)
    unresolved = []
    certs = set()
    searched = 0
    for c in sorted(comps, key=len):
        sub = induced_subgraph(core, c)
        if sub.n < 5:
            certs.add("small")
            continue

        def back(w):
            return [int(reps[keep[c[i]]]) for i in w]

        if is_chordal(sub):
            certs.add("chordal")
            continue
        try:
            quick = min(budget.quick_hole_len, sub.n if sub.n % 2 else sub.n - 1)
            w = odd_hole_search(sub, quick, counter.budget - counter.nodes) if quick >= 5 else None
            if w:
                return _not_perfect(g, back(w), "odd-hole")
            if sub.n > budget.max_vertices:
                unresolved.append(sub.n)
                continue
            top = sub.n if sub.n % 2 else sub.n - 1
            remaining = counter.budget - counter.nodes
            w = odd_hole_search(sub, top, remaining) if top >= 5 else None
            if w:
                return _not_perfect(g, back(w), "odd-hole")
            w = odd_antihole_search(sub, top, remaining) if top >= 7 else None
            if w:
                return _not_perfect(g, back(w), "odd-antihole")
            certs.add("exhaustive")
            searched = max(searched, sub.n)
        except BudgetExceeded:
            unresolved.append(sub.n)
    if unresolved:
        return Unknown(
            f"{len(unresolved)} component(s) of the twin quotient not settled "
            f"(sizes {sorted(unresolved)}; vertex cap {budget.max_vertices}, "
            f"node cap {budget.max_nodes})"
        )
    return Perfect(q.n, searched, "+".join(sorted(certs)) or "trivial")


def _not_perfect(g: Graph, w: list[int], shape: str) -> NotPerfect:
    ok = is_odd_hole(g, w) if shape == "odd-hole" else is_odd_antihole(g, w)
    if not ok:
        raise AssertionError("witness failed independent verification")
    return NotPerfect(w, [g.labels[i] for i in w], shape)


# ---------------------------------------------------------------------------
# universality


@dataclass(frozen=True)
class EmbeddingResult:
    spec: Abelian
    vertex_map: list[int]  # target vertex -> group element index
    labels: list[str] = field(default_factory=list)


def _next_primes(k: int) -> list[int]:
    out, c = [], 2
    while len(out) < k:
        if all(c % p for p in out):
            out.append(c)
        c += 1
    return out


def universality_embed(target: Graph, cap: int = 4, verify: bool = True) -> EmbeddingResult:
    """Embed ``target`` as an induced subgraph of the deep commuting graph of
    a product of groups C_p x C_p over distinct primes."""
    from .graphs import edge_compare
    from .oracles import default_oracle

    n = target.n
    if n < 1:
        raise ValueError("target graph needs at least one vertex")
    if n > cap:
        raise CapExceeded(f"embedding capped at {cap} vertices (group order grows as prod p^2)")
    primes = _next_primes(n)
    # coordinates: per vertex, a list of (a, b) exponent pairs, one per prime
    coords = [[(0, 0)]]
    for m in range(1, n):
        nb = set(target.neighbors(m).tolist())
        new = []
        for v in range(m):
            new.append(coords[v] + [(0, 0) if v in nb else (1, 0)])
        new.append([(0, 0)] * m + [(0, 1)])
        coords = new
    spec = Abelian([AbelianP(p, (1, 1)) for p in primes])
    G = build_group(spec)
    vmap = []
    for c in coords:
        parts = [f.element(a, b) for f, (a, b) in zip(G.factors, c)]
        vmap.append(G.element(*parts))
    labels = [G.labels[x] for x in vmap]
    if verify:
        oracle = default_oracle(G)
        rows = np.stack([oracle.row(x, np.asarray(vmap)) for x in vmap])
        np.fill_diagonal(rows, False)
        image = Graph.from_dense(rows, labels)
        if not edge_compare(target, image).empty:
            raise AssertionError("embedding failed verification")
    return EmbeddingResult(spec, vmap, labels)
