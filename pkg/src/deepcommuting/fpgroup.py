"""Finitely presented groups and their permutation representations.

Words are tuples of signed, 1-based generator indices: ``+k`` is generator
``k - 1`` and ``-k`` its inverse.  Coset enumeration (HLT with lookahead)
turns a :class:`Presentation` into a :class:`PermRep`; over the trivial
subgroup this is the regular representation and every cover element is
identified by the image of coset 0.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, InvalidWord, NonCentralKernel

Word = tuple[int, ...]

DEFAULT_MAX_COSETS = 200_000
CACHE_FORMAT_VERSION = 1
_CACHE_MAGIC = b"DCGCOVER"


# ---------------------------------------------------------------------------
# words


def free_reduce(w: Iterable[int]) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w: Iterable[int]) -> Word:
    r = list(free_reduce(w))
    i, j = 0, len(r) - 1
    while i < j and r[i] == -r[j]:
        i += 1
        j -= 1
    return tuple(r[i : j + 1])


def inverse_word(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def power_word(w: Sequence[int], k: int) -> Word:
    if k < 0:
        return tuple(inverse_word(w)) * (-k)
    return tuple(w) * k


def commutator_word(u: Sequence[int], v: Sequence[int]) -> Word:
    """``[u, v] = u^-1 v^-1 u v``."""
    return inverse_word(u) + inverse_word(v) + tuple(u) + tuple(v)


def _check_word(w: Sequence[int], ngens: int) -> None:
    for x in w:
        if not isinstance(x, (int, np.integer)) or x == 0 or abs(x) > ngens:
            raise InvalidWord(f"letter {x!r} out of range for {ngens} generators")


def _letter_col(x: int) -> int:
    return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1


def _col_letter(c: int) -> int:
    return c // 2 + 1 if c % 2 == 0 else -(c // 2 + 1)


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    generator_names: tuple[str, ...]
    relators: tuple[Word, ...]
    kernel_generators: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        n = len(self.generator_names)
        for r in self.relators:
            _check_word(r, n)
        for k in self.kernel_generators:
            if not 0 <= k < n:
                raise InvalidWord(f"kernel generator {k} out of range")

    @property
    def generator_count(self) -> int:
        return len(self.generator_names)

    def digest(self, subgroup: Sequence[Word] = ()) -> str:
        payload = json.dumps(
            {
                "gens": list(self.generator_names),
                "rels": [list(r) for r in self.relators],
                "kernel": list(self.kernel_generators),
                "subgroup": [list(w) for w in subgroup],
            },
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()

    def word_text(self, w: Sequence[int]) -> str:
        if not w:
            return "e"
        parts = []
        for x in w:
            name = self.generator_names[abs(x) - 1]
            parts.append(name if x > 0 else f"{name}^-1")
        return "*".join(parts)


def direct_product(a: Presentation, b: Presentation) -> Presentation:
    """Presentation of A x B: generators of ``a`` then ``b``, plus commutation relators."""
    k = a.generator_count

    def shift(w: Word) -> Word:
        return tuple(x + k if x > 0 else x - k for x in w)

    rels = list(a.relators) + [shift(r) for r in b.relators]
    for i in range(1, k + 1):
        for j in range(1, b.generator_count + 1):
            rels.append(commutator_word((i,), (j + k,)))
    kernel = tuple(a.kernel_generators) + tuple(x + k for x in b.kernel_generators)
    return Presentation(a.generator_names + b.generator_names, tuple(rels), kernel)


# ---------------------------------------------------------------------------
# coset enumeration


class _Full(Exception):
    pass


class _Enumerator:
    """HLT coset enumeration over a flat list table (-1 = undefined)."""

    def __init__(self, ngens: int, relators: list[list[int]], max_cosets: int):
        self.nc = 2 * ngens
        self.rels = relators
        self.max = max_cosets
        self.tab: list[int] = [-1] * self.nc
        self.p: list[int] = [0]
        self.nlive = 1

    def rep(self, k: int) -> int:
        p = self.p
        r = k
        while p[r] != r:
            r = p[r]
        while p[k] != r:
            p[k], k = r, p[k]
        return r

    def define(self, a: int, x: int) -> None:
        if self.nlive >= self.max:
            raise _Full
        b = len(self.p)
        self.p.append(b)
        self.tab.extend([-1] * self.nc)
        self.nlive += 1
        self.tab[a * self.nc + x] = b
        self.tab[b * self.nc + (x ^ 1)] = a

    def _merge(self, k: int, l: int, q: list[int]) -> None:
        k1, l1 = self.rep(k), self.rep(l)
        if k1 == l1:
            return
        if k1 > l1:
            k1, l1 = l1, k1
        self.p[l1] = k1
        q.append(l1)
        self.nlive -= 1

    def coincidence(self, a: int, b: int) -> None:
        tab, nc = self.tab, self.nc
        q: list[int] = []
        self._merge(a, b, q)
        i = 0
        while i < len(q):
            e = q[i]
            i += 1
            base = e * nc
            for x in range(nc):
                f = tab[base + x]
                if f < 0:
                    continue
                tab[f * nc + (x ^ 1)] = -1
                e1, f1 = self.rep(e), self.rep(f)
                t = tab[e1 * nc + x]
                if t >= 0:
                    self._merge(f1, t, q)
                else:
                    t = tab[f1 * nc + (x ^ 1)]
                    if t >= 0:
                        self._merge(e1, t, q)
                    else:
                        tab[e1 * nc + x] = f1
                        tab[f1 * nc + (x ^ 1)] = e1

    def scan(self, a: int, w: list[int], fill: bool) -> None:
        tab, nc = self.tab, self.nc
        f, i, b, j = a, 0, a, len(w) - 1
        while True:
            while i <= j:
                nxt = tab[f * nc + w[i]]
                if nxt < 0:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                nxt = tab[b * nc + (w[j] ^ 1)]
                if nxt < 0:
                    break
                b = nxt
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                tab[f * nc + w[i]] = b
                tab[b * nc + (w[i] ^ 1)] = f
                return
            if not fill:
                return
            self.define(f, w[i])

    def lookahead(self) -> None:
        p = self.p
        for b in range(len(p)):
            if p[b] != b:
                continue
            for r in self.rels:
                self.scan(b, r, fill=False)
                if p[b] != b:
                    break

    def compact(self, alpha: int) -> int:
        """Drop dead cosets, keep order; returns the new index of ``alpha``."""
        p, tab, nc = self.p, self.tab, self.nc
        live = [k for k in range(len(p)) if p[k] == k]
        new = {old: i for i, old in enumerate(live)}
        ntab = [-1] * (len(live) * nc)
        for i, old in enumerate(live):
            base = old * nc
            for x in range(nc):
                t = tab[base + x]
                if t >= 0:
                    ntab[i * nc + x] = new[t]
        self.tab = ntab
        self.p = list(range(len(live)))
        while alpha < len(p) and p[alpha] != alpha:
            alpha += 1
        return new.get(alpha, len(live))

    def run(self, subgroup: list[list[int]]) -> None:
        for w in subgroup:
            self._guarded(lambda: self.scan(self.rep(0), w, fill=True))
        alpha = 0
        while alpha < len(self.p):
            if self.p[alpha] == alpha:
                try:
                    self._close(alpha)
                except _Full:
                    self.lookahead()
                    alpha = self.compact(alpha)
                    # give up unless lookahead freed a real share of the table,
                    # otherwise every new definition triggers another full pass
                    if self.nlive > self.max - max(1, self.max // 20):
                        raise BudgetExceeded(
                            f"coset table did not close within {self.max} cosets"
                        )
                    continue
            alpha += 1
            if len(self.p) > 3 * self.max:
                alpha = self.compact(alpha)

    def _guarded(self, fn) -> None:
        try:
            fn()
        except _Full:
            raise BudgetExceeded(f"coset table did not close within {self.max} cosets")

    def _close(self, alpha: int) -> None:
        p = self.p
        for r in self.rels:
            self.scan(alpha, r, fill=True)
            if p[alpha] != alpha:
                return
        base = alpha * self.nc
        for x in range(self.nc):
            if self.tab[base + x] < 0:
                self.define(alpha, x)

    def standardized(self) -> np.ndarray:
        """Table renumbered by first appearance (row-major scan from coset 0)."""
        tab, nc = self.tab, self.nc
        start = self.rep(0)
        order = [start]
        new = {start: 0}
        k = 0
        while k < len(order):
            base = order[k] * nc
            for x in range(nc):
                t = tab[base + x]
                if t < 0:
                    raise RuntimeError("incomplete coset table after enumeration")
                t = self.rep(t)
                if t not in new:
                    new[t] = len(order)
                    order.append(t)
            k += 1
        out = np.empty((len(order), nc), dtype=np.int32)
        for i, old in enumerate(order):
            base = old * nc
            out[i] = [new[self.rep(tab[base + x])] for x in range(nc)]
        return out


@dataclass(frozen=True, eq=False)
class PermRep:
    """Transitive action on cosets; column ``2k`` is generator k, ``2k+1`` its inverse."""

    table: np.ndarray
    subgroup: tuple[Word, ...] = ()
    presentation_hash: str = ""

    @property
    def degree(self) -> int:
        return int(self.table.shape[0])

    @property
    def generator_count(self) -> int:
        return int(self.table.shape[1] // 2)

    @property
    def generator_images(self) -> list[np.ndarray]:
        return [self.table[:, 2 * k] for k in range(self.generator_count)]

    @property
    def identity_coset(self) -> int:
        return 0

    @property
    def is_regular(self) -> bool:
        return not any(self.subgroup)

    def apply(self, point, w: Sequence[int]):
        """Image of ``point`` (int or index array) under the word ``w``."""
        _check_word(w, self.generator_count)
        t = self.table
        for x in w:
            point = t[point, _letter_col(x)]
        return point

    @cached_property
    def _tree(self) -> tuple[np.ndarray, np.ndarray, list[np.ndarray]]:
        # BFS spanning tree; standardized numbering already is BFS order
        d = self.degree
        parent = np.full(d, -1, dtype=np.int64)
        col = np.full(d, -1, dtype=np.int64)
        depth = np.full(d, -1, dtype=np.int64)
        depth[0] = 0
        frontier = np.array([0])
        levels = [frontier]
        nc = self.table.shape[1]
        while frontier.size:
            nxt_pts = []
            for c in range(nc):
                img = self.table[frontier, c]
                fresh = depth[img] < 0
                if not fresh.any():
                    continue
                img, src = img[fresh], frontier[fresh]
                img, first = np.unique(img, return_index=True)
                depth[img] = depth[frontier[0]] + 1
                parent[img] = src[first]
                col[img] = c
                nxt_pts.append(img)
            frontier = np.concatenate(nxt_pts) if nxt_pts else np.array([], dtype=np.int64)
            if frontier.size:
                levels.append(frontier)
        return parent, col, levels

    def word_of(self, point: int) -> Word:
        """A shortest word carrying coset 0 to ``point``."""
        parent, col, _ = self._tree
        letters = []
        while point != 0:
            letters.append(_col_letter(int(col[point])))
            point = int(parent[point])
        return tuple(reversed(letters))

    def images_under_tree_words(self, start: int) -> np.ndarray:
        """``out[c] = start ^ word_of(c)`` for every coset ``c``."""
        parent, col, levels = self._tree
        out = np.empty(self.degree, dtype=np.int64)
        out[0] = start
        for lvl in levels[1:]:
            out[lvl] = self.table[out[parent[lvl]], col[lvl]]
        return out


def coset_enumerate(
    p: Presentation,
    subgroup: Sequence[Word] = (),
    max_cosets: int = DEFAULT_MAX_COSETS,
) -> PermRep:
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    for w in subgroup:
        _check_word(w, p.generator_count)
    rels = []
    for r in p.relators:
        r = cyclic_reduce(r)
        if r:
            rels.append([_letter_col(x) for x in r])
    sub = [[_letter_col(x) for x in free_reduce(w)] for w in subgroup]
    sub = [w for w in sub if w]
    en = _Enumerator(p.generator_count, rels, max_cosets)
    en.run(sub)
    table = en.standardized()
    return PermRep(table, tuple(tuple(w) for w in subgroup), p.digest(subgroup))


# ---------------------------------------------------------------------------
# cover elements (regular representation)


@dataclass(frozen=True)
class CoverElement:
    point: int
    word: Word = field(default=(), compare=False)


def _require_regular(rep: PermRep) -> None:
    if not rep.is_regular:
        raise ValueError("element arithmetic needs the regular representation")


def element(rep: PermRep, point: int) -> CoverElement:
    return CoverElement(int(point), rep.word_of(int(point)))


def eval_word(rep: PermRep, w: Sequence[int]) -> CoverElement:
    return CoverElement(int(rep.apply(0, tuple(w))), free_reduce(w))


def multiply(rep: PermRep, x: CoverElement, y: CoverElement) -> CoverElement:
    _require_regular(rep)
    return CoverElement(int(rep.apply(x.point, _word(rep, y))), _word(rep, x) + _word(rep, y))


def inverse(rep: PermRep, x: CoverElement) -> CoverElement:
    w = inverse_word(_word(rep, x))
    return CoverElement(int(rep.apply(0, w)), w)


def _word(rep: PermRep, x: CoverElement) -> Word:
    if x.word or x.point == 0:
        return x.word
    return rep.word_of(x.point)


def element_commutator(rep: PermRep, x: CoverElement, y: CoverElement) -> CoverElement:
    """``x^-1 y^-1 x y``."""
    _require_regular(rep)
    return eval_word(rep, commutator_word(_word(rep, x), _word(rep, y)))


def element_order(rep: PermRep, x: CoverElement) -> int:
    _require_regular(rep)
    w = _word(rep, x)
    cur, m = rep.apply(0, w), 1
    while cur != 0:
        cur = rep.apply(cur, w)
        m += 1
    return m


def central_points(rep: PermRep) -> np.ndarray:
    """Boolean mask over cosets: which cover elements are central."""
    _require_regular(rep)
    mask = np.ones(rep.degree, dtype=bool)
    pts = np.arange(rep.degree)
    for k in range(rep.generator_count):
        s = rep.table[0, 2 * k]
        right = rep.table[pts, 2 * k]  # 0^(c s)
        left = rep.images_under_tree_words(int(s))  # 0^(s c)
        mask &= right == left
    return mask


def center(rep: PermRep) -> set[CoverElement]:
    return {element(rep, int(c)) for c in np.flatnonzero(central_points(rep))}


@dataclass(frozen=True, eq=False)
class Projection:
    """Quotient of a regular cover by the subgroup spanned by kernel generators."""

    rep: PermRep
    kernel: np.ndarray  # cover points of the kernel subgroup
    fiber_index: np.ndarray  # cover point -> quotient index
    lifts: np.ndarray  # quotient index -> smallest cover point in the fiber

    @property
    def quotient_order(self) -> int:
        return int(self.lifts.size)

    def project(self, x: CoverElement) -> int:
        return int(self.fiber_index[x.point])

    def lift(self, q: int) -> CoverElement:
        return element(self.rep, int(self.lifts[q]))

    def fiber(self, q: int) -> np.ndarray:
        return np.flatnonzero(self.fiber_index == q)


def project_and_lift(rep: PermRep, p: Presentation) -> Projection:
    _require_regular(rep)
    t = rep.table
    kcols = [2 * k for k in p.kernel_generators]
    for k in p.kernel_generators:
        for s in range(rep.generator_count):
            if t[t[0, 2 * k], 2 * s] != t[t[0, 2 * s], 2 * k]:
                raise NonCentralKernel(
                    f"kernel generator {p.generator_names[k]} does not commute "
                    f"with {p.generator_names[s]}"
                )
    # K is central, so each fiber cK is the orbit of c under the kernel generators
    fiber = np.full(rep.degree, -1, dtype=np.int64)
    lifts = []
    for c in range(rep.degree):
        if fiber[c] >= 0:
            continue
        q = len(lifts)
        lifts.append(c)
        fiber[c] = q
        stack = [c]
        while stack:
            a = stack.pop()
            for col in kcols:
                b = int(t[a, col])
                if fiber[b] < 0:
                    fiber[b] = q
                    stack.append(b)
    kernel = np.flatnonzero(fiber == 0)
    return Projection(rep, kernel, fiber, np.asarray(lifts, dtype=np.int64))


# ---------------------------------------------------------------------------
# cover cache files


def save_rep(path: str | os.PathLike, rep: PermRep, label: str = "") -> None:
    """Write atomically: magic, JSON header line, raw little-endian int32 images."""
    header = {
        "version": CACHE_FORMAT_VERSION,
        "presentation_hash": rep.presentation_hash,
        "degree": rep.degree,
        "generator_count": rep.generator_count,
        "subgroup": [list(w) for w in rep.subgroup],
        "label": label,
    }
    images = np.ascontiguousarray(rep.table[:, 0::2].T, dtype="<i4")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(_CACHE_MAGIC + b"\n")
            fh.write(json.dumps(header, sort_keys=True).encode() + b"\n")
            fh.write(images.tobytes())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_rep(path: str | os.PathLike) -> PermRep:
    with open(path, "rb") as fh:
        if fh.readline().rstrip(b"\n") != _CACHE_MAGIC:
            raise ValueError(f"{path}: not a cover cache file")
        header = json.loads(fh.readline())
        if header["version"] != CACHE_FORMAT_VERSION:
            raise ValueError(f"{path}: unsupported cache version {header['version']}")
        d, g = header["degree"], header["generator_count"]
        images = np.frombuffer(fh.read(), dtype="<i4")
    if images.size != d * g:
        raise ValueError(f"{path}: truncated cache file")
    images = images.reshape(g, d)
    table = np.empty((d, 2 * g), dtype=np.int32)
    for k in range(g):
        table[:, 2 * k] = images[k]
        inv = np.empty(d, dtype=np.int32)
        inv[images[k]] = np.arange(d, dtype=np.int32)
        table[:, 2 * k + 1] = inv
    sub = tuple(tuple(w) for w in header["subgroup"])
    return PermRep(table, sub, header["presentation_hash"])


class CoverCache:
    """Directory of enumerated coset tables keyed by presentation hash."""

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    def path_for(self, key: str) -> Path:
        return self.root / f"{key}.cover"

    def get(self, p: Presentation, subgroup: Sequence[Word] = ()) -> PermRep | None:
        path = self.path_for(p.digest(subgroup))
        if not path.exists():
            return None
        return load_rep(path)

    def put(self, rep: PermRep, label: str = "") -> Path:
        path = self.path_for(rep.presentation_hash)
        save_rep(path, rep, label)
        return path

    def entries(self) -> list[tuple[str, int, str]]:
        """(key, degree, label) for every stored table."""
        if not self.root.is_dir():
            return []
        out = []
        for f in sorted(self.root.glob("*.cover")):
            with open(f, "rb") as fh:
                fh.readline()
                header = json.loads(fh.readline())
            out.append((f.stem, int(header["degree"]), header.get("label", "")))
        return out

    def clear(self) -> int:
        n = 0
        if self.root.is_dir():
            for f in self.root.glob("*.cover"):
                f.unlink()
                n += 1
        return n


def enumerate_cached(
    p: Presentation,
    subgroup: Sequence[Word] = (),
    max_cosets: int = DEFAULT_MAX_COSETS,
    cache: CoverCache | None = None,
    label: str = "",
) -> PermRep:
    if cache is not None:
        hit = cache.get(p, subgroup)
        if hit is not None:
            return hit
    rep = coset_enumerate(p, subgroup, max_cosets)
    if cache is not None:
        cache.put(rep, label)
    return rep
