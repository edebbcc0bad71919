"""Bitset graphs, the four group-graph constructors and graph operations.

Adjacency is a ``(V, ceil(V/64))`` array of little-endian uint64 words; bit
``j & 63`` of word ``j >> 6`` in row ``i`` is the edge i–j.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .catalog.groups import GroupHandle
from .errors import ArityMismatch, BadBijection, UnknownVertex

_ONE = np.uint64(1)


def _words(n: int) -> int:
    return max(1, (n + 63) // 64)


def pack_bool_rows(B: np.ndarray) -> np.ndarray:
    """Pack a (m, V) boolean array into (m, words) uint64 rows."""
    m, n = B.shape
    W = _words(n)
    bytes_ = np.packbits(B, axis=1, bitorder="little")
    out = np.zeros((m, W * 8), dtype=np.uint8)
    out[:, : bytes_.shape[1]] = bytes_
    return out.view("<u8").reshape(m, W)


class Graph:
    """Simple undirected graph; treat as immutable once built."""

    def __init__(self, rows: np.ndarray, labels: Sequence[str] | None = None):
        self.rows = np.ascontiguousarray(rows, dtype="<u8")
        self.n = self.rows.shape[0]
        if labels is None:
            labels = [str(i) for i in range(self.n)]
        if len(labels) != self.n:
            raise ValueError("label count does not match vertex count")
        self.labels = list(labels)
        self.rows.setflags(write=False)

    # -- construction ------------------------------------------------------

    @classmethod
    def empty(cls, n: int, labels=None) -> "Graph":
        return cls(np.zeros((n, _words(n)), dtype="<u8"), labels)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> "Graph":
        e = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        rows = np.zeros((n, _words(n)), dtype="<u8")
        _set_bits(rows, e[:, 0], e[:, 1])
        _set_bits(rows, e[:, 1], e[:, 0])
        _clear_diagonal(rows)
        return cls(rows, labels)

    @classmethod
    def from_dense(cls, A: np.ndarray, labels=None) -> "Graph":
        A = np.asarray(A, dtype=bool)
        A = A | A.T
        np.fill_diagonal(A, False)
        return cls(pack_bool_rows(A), labels)

    @classmethod
    def complete(cls, n: int, labels=None) -> "Graph":
        A = np.ones((n, n), dtype=bool)
        return cls.from_dense(A, labels)

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    # -- queries -----------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return self.n

    def __len__(self) -> int:
        return self.n

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.rows[i, j >> 6] >> np.uint64(j & 63)) & _ONE)

    def row_bool(self, i: int) -> np.ndarray:
        return np.unpackbits(self.rows[i].view(np.uint8), bitorder="little")[: self.n].astype(bool)

    def neighbors(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.row_bool(i))

    def dense(self, rows: slice | None = None) -> np.ndarray:
        R = self.rows if rows is None else self.rows[rows]
        bits = np.unpackbits(R.view(np.uint8), axis=1, bitorder="little")
        return bits[:, : self.n].astype(bool)

    def _row_chunks(self, chunk: int = 2048):
        for s in range(0, self.n, chunk):
            yield s, self.dense(slice(s, min(self.n, s + chunk)))

    @property
    def degrees(self) -> np.ndarray:
        return np.bitwise_count(self.rows).sum(axis=1).astype(np.int64)

    @property
    def edge_count(self) -> int:
        return int(self.degrees.sum() // 2)

    def edges(self) -> np.ndarray:
        """Edges (i, j), i < j, sorted lexicographically."""
        out = []
        for s, B in self._row_chunks():
            i, j = np.nonzero(B)
            i = i + s
            keep = i < j
            out.append(np.stack([i[keep], j[keep]], axis=1))
        if not out:
            return np.zeros((0, 2), dtype=np.int64)
        return np.concatenate(out).astype(np.int64)

    def edge_codes(self) -> np.ndarray:
        e = self.edges()
        return e[:, 0] * self.n + e[:, 1]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and np.array_equal(self.rows, other.rows)
        )

    def __hash__(self):
        return hash((self.n, self.rows.tobytes()))

    def __repr__(self) -> str:
        return f"<Graph V={self.n} E={self.edge_count}>"

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownVertex(label) from None

    def is_subgraph_of(self, other: "Graph") -> bool:
        """Same vertex set, every edge of self is an edge of other."""
        return self.n == other.n and not np.any(self.rows & ~other.rows)

    def complement(self) -> "Graph":
        rows = ~self.rows
        rows = rows.copy()
        _mask_tail(rows, self.n)
        _clear_diagonal(rows)
        return Graph(rows, self.labels)


def _set_bits(rows: np.ndarray, src: np.ndarray, dst: np.ndarray) -> None:
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    if src.size == 0:
        return
    bits = np.left_shift(_ONE, (dst & 63).astype(np.uint64))
    np.bitwise_or.at(rows, (src, dst >> 6), bits)


def _clear_diagonal(rows: np.ndarray) -> None:
    n = rows.shape[0]
    idx = np.arange(n)
    rows[idx, idx >> 6] &= ~np.left_shift(_ONE, (idx & 63).astype(np.uint64))


def _mask_tail(rows: np.ndarray, n: int) -> None:
    if n % 64:
        rows[:, -1] &= np.uint64((1 << (n % 64)) - 1)


# ---------------------------------------------------------------------------
# group graphs


def _conjugate_rows(G: GroupHandle, neighbours_of_rep) -> tuple[np.ndarray, np.ndarray]:
    """Edges for every element from each class rep's neighbour list.

    Adjacency in all four graphs is invariant under conjugation, so
    N(t^-1 x t) = t^-1 N(x) t.
    """
    src, dst = [], []
    for cc in G.conjugacy_classes:
        nb = np.asarray(neighbours_of_rep(cc.rep), dtype=np.int64)
        if nb.size == 0:
            continue
        for m, t in zip(cc.members, cc.transversal):
            img = nb if t == 0 else G.conj(nb, np.full(nb.size, t))
            src.append(np.full(nb.size, m))
            dst.append(img)
    if not src:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    return np.concatenate(src), np.concatenate(dst)


def _rows_from_pairs(n: int, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    rows = np.zeros((n, _words(n)), dtype="<u8")
    _set_bits(rows, src, dst)
    _set_bits(rows, dst, src)
    _clear_diagonal(rows)
    return rows


def commuting_graph(G: GroupHandle) -> Graph:
    if G.is_abelian:
        return Graph.complete(G.size, G.labels)
    src, dst = _conjugate_rows(G, G.centralizer)
    return Graph(_rows_from_pairs(G.size, src, dst), G.labels)


def deep_commuting_graph(G: GroupHandle, oracle) -> Graph:
    n = G.size
    if G.is_abelian:
        rows = np.zeros((n, _words(n)), dtype="<u8")
        ys = np.arange(n)
        chunk = 256
        for s in range(0, n, chunk):
            B = np.stack([oracle.row(x, ys) for x in range(s, min(n, s + chunk))])
            rows[s : s + B.shape[0]] = pack_bool_rows(B)
        _clear_diagonal(rows)
        return Graph(rows, G.labels)

    def nbrs(x):
        c = G.centralizer(x)
        c = c[c != x]
        return c[oracle.row(x, c)]

    src, dst = _conjugate_rows(G, nbrs)
    return Graph(_rows_from_pairs(n, src, dst), G.labels)


def enhanced_power_graph(G: GroupHandle) -> Graph:
    """x ~ y iff <x, y> is cyclic: union of cliques on maximal cyclic subgroups."""
    n = G.size
    rows = np.zeros((n, _words(n)), dtype="<u8")
    for sub in G.maximal_cyclic_subgroups():
        mask = np.zeros((1, n), dtype=bool)
        mask[0, sub] = True
        rows[sub] |= pack_bool_rows(mask)[0]
    _clear_diagonal(rows)
    return Graph(rows, G.labels)


def power_graph(G: GroupHandle) -> Graph:
    """x ~ y iff one is a power of the other."""
    n = G.size
    orders = G.orders
    src, dst = [], []
    xs = np.arange(n)
    cur = xs.copy()
    k = 1
    while True:
        k += 1
        alive = orders[xs] > k
        xs, cur = xs[alive], cur[alive]
        if xs.size == 0:
            break
        cur = G.mul(cur, xs)
        src.append(xs)
        dst.append(cur)
    # x^1 = x, and the identity x^o
    src.append(np.arange(n))
    dst.append(np.zeros(n, dtype=np.int64))
    return Graph(_rows_from_pairs(n, np.concatenate(src), np.concatenate(dst)), G.labels)


@dataclass(frozen=True, eq=False)
class Hierarchy:
    power: Graph
    enhanced: Graph
    deep: Graph
    commuting: Graph

    def as_dict(self) -> dict[str, Graph]:
        return {"power": self.power, "enhanced": self.enhanced, "deep": self.deep,
                "commuting": self.commuting}

    def inclusion_holds(self) -> bool:
        return (
            self.power.is_subgraph_of(self.enhanced)
            and self.enhanced.is_subgraph_of(self.deep)
            and self.deep.is_subgraph_of(self.commuting)
        )


def build_hierarchy(G: GroupHandle, oracle) -> Hierarchy:
    return Hierarchy(
        power_graph(G),
        enhanced_power_graph(G),
        deep_commuting_graph(G, oracle),
        commuting_graph(G),
    )


# ---------------------------------------------------------------------------
# graph operations


def _vertex_indices(g: Graph, vertices) -> np.ndarray:
    out = []
    for v in vertices:
        if isinstance(v, str):
            out.append(g.index(v))
        else:
            v = int(v)
            if not 0 <= v < g.n:
                raise UnknownVertex(v)
            out.append(v)
    return np.asarray(out, dtype=np.int64)


def induced_subgraph(g: Graph, vertices) -> Graph:
    """Subgraph on ``vertices`` (indices or labels), in the given order."""
    idx = _vertex_indices(g, vertices)
    if len(set(idx.tolist())) != idx.size:
        raise ValueError("duplicate vertices")
    B = _induced_chunks(g, idx)
    return Graph(pack_bool_rows(B), [g.labels[i] for i in idx])


def _induced_chunks(g: Graph, idx: np.ndarray) -> np.ndarray:
    B = np.zeros((idx.size, idx.size), dtype=bool)
    for k in range(0, idx.size, 1024):
        part = idx[k : k + 1024]
        bits = np.unpackbits(g.rows[part].view(np.uint8), axis=1, bitorder="little")
        B[k : k + part.size] = bits[:, idx].astype(bool)
    return B


def strong_product(g1: Graph, g2: Graph) -> Graph:
    """Vertex (i, j) has index ``i * |g2| + j``."""
    n1, n2 = g1.n, g2.n
    A1 = g1.dense() | np.eye(n1, dtype=bool)
    A2 = g2.dense() | np.eye(n2, dtype=bool)
    rows = np.zeros((n1 * n2, _words(n1 * n2)), dtype="<u8")
    for i in range(n1):
        block = np.kron(A1[i][None, :], A2)  # (n2, n1*n2)
        rows[i * n2 : (i + 1) * n2] = pack_bool_rows(block)
    _clear_diagonal(rows)
    labels = [f"({a}, {b})" for a in g1.labels for b in g2.labels]
    return Graph(rows, labels)


def generalized_join(base: Graph, parts: Sequence[Graph]) -> Graph:
    """Replace base vertex k by ``parts[k]``; join parts of adjacent base vertices."""
    if len(parts) != base.n:
        raise ArityMismatch(f"{len(parts)} parts for {base.n} base vertices")
    sizes = np.asarray([p.n for p in parts], dtype=np.int64)
    offs = np.concatenate([[0], np.cumsum(sizes)])
    N = int(offs[-1])
    owner = np.repeat(np.arange(base.n), sizes)
    rows = np.zeros((N, _words(N)), dtype="<u8")
    for k, p in enumerate(parts):
        if p.n == 0:
            continue
        across = base.row_bool(k)[owner]  # columns in parts adjacent to k
        block = np.repeat(across[None, :], p.n, axis=0)
        block[:, offs[k] : offs[k + 1]] = p.dense()
        rows[offs[k] : offs[k + 1]] = pack_bool_rows(block)
    labels = [f"{base.labels[k]}/{p.labels[i]}" for k, p in enumerate(parts) for i in range(p.n)]
    return Graph(rows, labels)


@dataclass(frozen=True)
class EdgeDiff:
    only_in_a: list[tuple[str, str]]
    only_in_b: list[tuple[str, str]]

    @property
    def empty(self) -> bool:
        return not self.only_in_a and not self.only_in_b

    def __bool__(self) -> bool:
        return not self.empty


def edge_compare(a: Graph, b: Graph, bijection=None) -> EdgeDiff:
    """Compare edges of ``a`` carried through ``bijection`` with ``b`` on the image.

    ``bijection[i]`` is the b-vertex for a-vertex i (defaults to identity).
    """
    if bijection is None:
        bijection = np.arange(a.n)
    f = np.asarray(bijection, dtype=np.int64)
    if f.shape != (a.n,):
        raise BadBijection("map must assign a b-vertex to every a-vertex")
    if f.size and (f.min() < 0 or f.max() >= b.n):
        raise BadBijection("map points outside b")
    if np.unique(f).size != f.size:
        raise BadBijection("map is not injective")
    ea = a.edges()
    u, v = f[ea[:, 0]], f[ea[:, 1]]
    ca = np.minimum(u, v) * b.n + np.maximum(u, v)
    if f.size == b.n:
        cb = b.edge_codes()
    else:
        sub = induced_subgraph(b, np.sort(f))
        eb = sub.edges()
        img = np.sort(f)
        cb = img[eb[:, 0]] * b.n + img[eb[:, 1]]
    inv = {int(t): i for i, t in enumerate(f)}
    only_a = np.setdiff1d(ca, cb)
    only_b = np.setdiff1d(cb, ca)

    def lab_a(c):
        i, j = inv[int(c // b.n)], inv[int(c % b.n)]
        return (a.labels[i], a.labels[j])

    def lab_b(c):
        return (b.labels[int(c // b.n)], b.labels[int(c % b.n)])

    return EdgeDiff([lab_a(c) for c in only_a], [lab_b(c) for c in only_b])


# ---------------------------------------------------------------------------
# emitters


def to_json(g: Graph, spec: str, kind: str) -> str:
    doc = {
        "spec": spec,
        "graph_kind": kind,
        "n": g.n,
        "edges": g.edges().tolist(),
        "labels": g.labels,
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {json.dumps(name)} {{"]
    for i, lab in enumerate(g.labels):
        lines.append(f"  {i} [label={json.dumps(lab)}];")
    for i, j in g.edges().tolist():
        lines.append(f"  {i} -- {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
