"""Concrete finite groups with elements numbered ``0 .. size-1``.

Element 0 is always the identity.  ``mul`` and ``inv`` accept integers or
index arrays and broadcast like numpy ufuncs.  Permutations compose left to
right: ``(x*y)[i] = y[x[i]]``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from ..errors import InvalidSpec
from .specs import (
    Abelian,
    AbelianP,
    Alternating,
    CoprimeProduct,
    Cyclic,
    Dihedral,
    GroupSpec,
    Heisenberg,
    Quaternion,
    Symmetric,
    format_spec,
    spec_order,
    validate,
)


@dataclass(frozen=True, eq=False)
class ConjugacyClass:
    rep: int
    members: np.ndarray
    transversal: np.ndarray  # conj(rep, transversal[i]) == members[i]


class GroupHandle:
    spec: GroupSpec
    size: int
    generators: tuple[int, ...]
    is_abelian: bool = False
    identity = 0

    # subclasses implement these two
    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def label(self, i: int) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {format_spec(self.spec)} order={self.size}>"

    def __len__(self) -> int:
        return self.size

    @cached_property
    def labels(self) -> list[str]:
        return [self.label(i) for i in range(self.size)]

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise KeyError(f"no element labelled {label!r} in {format_spec(self.spec)}") from None

    def mul1(self, a: int, b: int) -> int:
        return int(self.mul(np.asarray([a]), np.asarray([b]))[0])

    def power(self, a, k: int):
        a = np.asarray(a)
        if k < 0:
            a, k = self.inv(a), -k
        result = np.zeros_like(a)
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def conj(self, x, t):
        """``t^-1 x t``."""
        return self.mul(self.mul(self.inv(t), x), t)

    def commutes(self, x: int, y: int) -> bool:
        return self.mul1(x, y) == self.mul1(y, x)

    @cached_property
    def orders(self) -> np.ndarray:
        order = np.zeros(self.size, dtype=np.int64)
        order[0] = 1
        active = np.arange(1, self.size)
        cur = active.copy()
        k = 1
        while active.size:
            k += 1
            cur = self.mul(cur, active)
            done = cur == 0
            order[active[done]] = k
            active, cur = active[~done], cur[~done]
        return order

    def order(self, x: int) -> int:
        return int(self.orders[x])

    def cyclic_subgroup(self, x: int) -> np.ndarray:
        """Powers ``x^0, x^1, ..., x^(o-1)``."""
        out = [0]
        c = int(x)
        while c != 0:
            out.append(c)
            c = self.mul1(c, x)
        return np.asarray(out, dtype=np.int64)

    def maximal_cyclic_subgroups(self) -> list[np.ndarray]:
        """Every cyclic subgroup not contained in a larger cyclic subgroup."""
        covered = np.zeros(self.size, dtype=bool)
        out = []
        for x in np.argsort(-self.orders, kind="stable"):
            if covered[x]:
                continue
            sub = self.cyclic_subgroup(int(x))
            covered[sub] = True
            out.append(sub)
        return out

    def centralizer(self, x: int) -> np.ndarray:
        if self.is_abelian:
            return np.arange(self.size)
        ys = np.arange(self.size)
        xs = np.full(self.size, x)
        return np.flatnonzero(self.mul(xs, ys) == self.mul(ys, xs))

    @cached_property
    def center(self) -> np.ndarray:
        if self.is_abelian:
            return np.arange(self.size)
        ys = np.arange(self.size)
        mask = np.ones(self.size, dtype=bool)
        for g in self.generators:
            gs = np.full(self.size, g)
            mask &= self.mul(gs, ys) == self.mul(ys, gs)
        return np.flatnonzero(mask)

    @cached_property
    def conjugacy_classes(self) -> list[ConjugacyClass]:
        if self.is_abelian:
            z = np.zeros(1, dtype=np.int64)
            return [ConjugacyClass(x, np.array([x]), z) for x in range(self.size)]
        cls = np.full(self.size, -1, dtype=np.int64)
        out = []
        for x in range(self.size):
            if cls[x] >= 0:
                continue
            cid = len(out)
            cls[x] = cid
            members, trans = [np.array([x])], [np.array([0])]
            frontier, ftrans = members[0], trans[0]
            while frontier.size:
                nm, nt = [], []
                for g in self.generators:
                    y = self.conj(frontier, np.full(frontier.size, g))
                    fresh = cls[y] < 0
                    if not fresh.any():
                        continue
                    y, t = y[fresh], ftrans[fresh]
                    y, first = np.unique(y, return_index=True)
                    cls[y] = cid
                    nm.append(y)
                    nt.append(self.mul(t[first], np.full(y.size, g)))
                if not nm:
                    break
                frontier, ftrans = np.concatenate(nm), np.concatenate(nt)
                members.append(frontier)
                trans.append(ftrans)
            out.append(ConjugacyClass(x, np.concatenate(members), np.concatenate(trans)))
        return out

    def closure(self, elems: Sequence[int]) -> np.ndarray:
        """Subgroup generated by ``elems`` (sorted indices)."""
        seen = np.zeros(self.size, dtype=bool)
        seen[0] = True
        frontier = np.array([0])
        gens = [int(e) for e in elems]
        while frontier.size:
            new = []
            for g in gens:
                y = self.mul(frontier, np.full(frontier.size, g))
                y = np.unique(y[~seen[y]])
                seen[y] = True
                new.append(y)
            frontier = np.concatenate(new) if new else np.array([], dtype=np.int64)
        return np.flatnonzero(seen)

    def is_cyclic(self) -> bool:
        return int(self.orders.max()) == self.size


# ---------------------------------------------------------------------------
# groups given by coordinate tuples


class TupleGroup(GroupHandle):
    moduli: tuple[int, ...]

    def _setup(self, moduli: Sequence[int]) -> None:
        self.moduli = tuple(int(m) for m in moduli)
        self.size = math.prod(self.moduli)
        self.coords = np.stack(
            np.unravel_index(np.arange(self.size), self.moduli), axis=-1
        ).astype(np.int64)
        strides = [1] * len(self.moduli)
        for i in range(len(self.moduli) - 2, -1, -1):
            strides[i] = strides[i + 1] * self.moduli[i + 1]
        self._strides = np.asarray(strides, dtype=np.int64)
        self._mods = np.asarray(self.moduli, dtype=np.int64)

    def encode(self, coords) -> np.ndarray:
        c = np.asarray(coords, dtype=np.int64) % self._mods
        return c @ self._strides

    def element(self, *coords: int) -> int:
        return int(self.encode(coords))

    def _mul_coords(self, A, B):
        raise NotImplementedError

    def _inv_coords(self, A):
        raise NotImplementedError

    def mul(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        return self.encode(self._mul_coords(self.coords[a], self.coords[b]))

    def inv(self, a):
        return self.encode(self._inv_coords(self.coords[np.asarray(a)]))


def _mono(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def _word_label(names: Sequence[str], exps: Sequence[int]) -> str:
    parts = [_mono(n, int(e)) for n, e in zip(names, exps) if e]
    return "*".join(parts) if parts else "e"


class CyclicGroup(TupleGroup):
    is_abelian = True

    def __init__(self, spec: Cyclic):
        self.spec = spec
        self._setup([spec.n])
        self.generators = (1,) if spec.n > 1 else ()

    def _mul_coords(self, A, B):
        return A + B

    def _inv_coords(self, A):
        return -A

    def label(self, i: int) -> str:
        return _word_label(["x"], [i])


class AbelianPGroup(TupleGroup):
    """``C_{p^r1} x ... x C_{p^rk}`` with generators x1..xk."""

    is_abelian = True

    def __init__(self, spec: AbelianP):
        self.spec = spec
        self._setup([spec.p**r for r in spec.ranks])
        k = len(spec.ranks)
        self.generators = tuple(
            self.element(*[1 if j == i else 0 for j in range(k)]) for i in range(k)
        )
        self._names = [f"x{i + 1}" for i in range(k)] if k > 1 else ["x"]

    def _mul_coords(self, A, B):
        return A + B

    def _inv_coords(self, A):
        return -A

    def label(self, i: int) -> str:
        return _word_label(self._names, self.coords[i])


class DihedralGroup(TupleGroup):
    """``D_2n``: coordinates (j, i) for a^i b^j; rotations come first."""

    def __init__(self, spec: Dihedral):
        self.spec = spec
        self.n = spec.n
        self._setup([2, self.n])
        self.generators = (self.element(0, 1), self.element(1, 0))

    def rotation(self, i: int) -> int:
        return self.element(0, i)

    def reflection(self, i: int) -> int:
        return self.element(1, i)

    def _mul_coords(self, A, B):
        j1, i1 = A[..., 0], A[..., 1]
        j2, i2 = B[..., 0], B[..., 1]
        return np.stack([j1 + j2, i1 + np.where(j1 == 1, -i2, i2)], axis=-1)

    def _inv_coords(self, A):
        j, i = A[..., 0], A[..., 1]
        return np.stack([j, np.where(j == 1, i, -i)], axis=-1)

    def label(self, i: int) -> str:
        j, r = self.coords[i]
        if j == 0:
            return _word_label(["a"], [r])
        return "b" if r == 0 else f"{_mono('a', int(r))}*b"


class QuaternionGroup(DihedralGroup):
    """``Q_4n``: a of order 2n, b^2 = a^n, b^-1 a b = a^-1."""

    def __init__(self, spec: Quaternion):
        self.spec = spec
        self.n = spec.n
        self._setup([2, 2 * self.n])
        self.generators = (self.element(0, 1), self.element(1, 0))

    def _mul_coords(self, A, B):
        j1, i1 = A[..., 0], A[..., 1]
        j2, i2 = B[..., 0], B[..., 1]
        i = i1 + np.where(j1 == 1, -i2, i2) + np.where((j1 & j2) == 1, self.n, 0)
        return np.stack([j1 ^ j2, i], axis=-1)

    def _inv_coords(self, A):
        j, i = A[..., 0], A[..., 1]
        return np.stack([j, np.where(j == 1, i + self.n, -i)], axis=-1)


class HeisenbergGroup(TupleGroup):
    """``H_3(Z/p^k)``: coordinates (i1, i2, i3) for y1^i1 y2^i2 w^i3, [y1, y2] = w."""

    def __init__(self, spec: Heisenberg):
        self.spec = spec
        self.q = spec.p**spec.k
        self._setup([self.q] * 3)
        self.generators = (self.element(1, 0, 0), self.element(0, 1, 0))

    def _mul_coords(self, A, B):
        return np.stack(
            [A[..., 0] + B[..., 0], A[..., 1] + B[..., 1],
             A[..., 2] + B[..., 2] - A[..., 1] * B[..., 0]],
            axis=-1,
        )

    def _inv_coords(self, A):
        return np.stack([-A[..., 0], -A[..., 1], -A[..., 2] - A[..., 0] * A[..., 1]], axis=-1)

    def power_coords(self, c: Sequence[int], l: int) -> tuple[int, int, int]:
        """Closed form for ``(y1^i1 y2^i2 w^i3)^l``."""
        i1, i2, i3 = c
        q = self.q
        return (l * i1 % q, l * i2 % q, (l * i3 - l * (l - 1) // 2 * i1 * i2) % q)

    def label(self, i: int) -> str:
        return _word_label(["y1", "y2", "w"], self.coords[i])


# ---------------------------------------------------------------------------
# permutation groups


def cycles_of(perm: Sequence[int]) -> list[tuple[int, ...]]:
    """Nontrivial cycles (0-based), ordered by smallest element."""
    n = len(perm)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        c = [s]
        seen[s] = True
        j = int(perm[s])
        while j != s:
            c.append(j)
            seen[j] = True
            j = int(perm[j])
        if len(c) > 1:
            out.append(tuple(c))
    return out


def cycle_label(perm: Sequence[int]) -> str:
    cyc = cycles_of(perm)
    if not cyc:
        return "e"
    sep = "" if len(perm) <= 9 else ","
    return "".join("(" + sep.join(str(i + 1) for i in c) + ")" for c in cyc)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def perm_from_cycles(text: str, n: int) -> tuple[int, ...]:
    """Parse ``"(123)(45)"`` or ``"(1,2,3)(4,5)"`` (1-based) into an image tuple."""
    perm = list(range(n))
    text = text.strip()
    if text in ("", "e", "()"):
        return tuple(perm)
    if _CYCLE_RE.sub("", text).strip():
        raise ValueError(f"bad cycle notation {text!r}")
    for body in _CYCLE_RE.findall(text):
        if "," in body or " " in body.strip():
            pts = [int(t) for t in re.split(r"[,\s]+", body.strip()) if t]
        else:
            pts = [int(ch) for ch in body]
        pts = [p - 1 for p in pts]
        if len(set(pts)) != len(pts) or any(not 0 <= p < n for p in pts):
            raise ValueError(f"bad cycle {body!r} for degree {n}")
        # compose this cycle after what we have so far (left to right)
        cyc = list(range(n))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            cyc[a] = b
        perm = [cyc[perm[i]] for i in range(n)]
    return tuple(perm)


def perm_parity(perm: Sequence[int]) -> int:
    return sum(len(c) - 1 for c in cycles_of(perm)) % 2


class PermGroup(GroupHandle):
    """Sym(n) or Alt(n); elements are image arrays in lexicographic order."""

    def __init__(self, spec: Symmetric | Alternating):
        self.spec = spec
        n = self.n = spec.n
        perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
        if isinstance(spec, Alternating):
            perms = perms[_parities(perms) == 0]
        self.perms = perms
        self.size = len(perms)
        self._weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
        self.codes = perms @ self._weights
        if isinstance(spec, Symmetric):
            gens = [perm_from_cycles("(1,2)", n), tuple(list(range(1, n)) + [0])]
        else:
            gens = [perm_from_cycles(f"(1,2,{i})", n) for i in range(3, n + 1)]
        self.generators = tuple(self.from_perm(g) for g in gens)

    def lookup(self, perms: np.ndarray) -> np.ndarray:
        codes = perms @ self._weights
        idx = np.searchsorted(self.codes, codes)
        idx = np.minimum(idx, self.size - 1)
        if not np.array_equal(self.codes[idx], codes):
            raise ValueError("permutation not in group")
        return idx

    def from_perm(self, perm: Sequence[int]) -> int:
        return int(self.lookup(np.asarray([perm], dtype=np.int64))[0])

    def from_cycles(self, text: str) -> int:
        return self.from_perm(perm_from_cycles(text, self.n))

    def mul(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        shape = a.shape
        pa, pb = self.perms[a.ravel()], self.perms[b.ravel()]
        return self.lookup(np.take_along_axis(pb, pa, axis=1)).reshape(shape)

    def inv(self, a):
        a = np.asarray(a)
        return self.lookup(np.argsort(self.perms[a.ravel()], axis=1)).reshape(a.shape)

    def label(self, i: int) -> str:
        return cycle_label(self.perms[i])

    def index(self, label: str) -> int:
        try:
            return self.from_cycles(label)
        except ValueError:
            return super().index(label)

    @cached_property
    def orders(self) -> np.ndarray:
        out = np.empty(self.size, dtype=np.int64)
        for i, p in enumerate(self.perms):
            out[i] = math.lcm(*[len(c) for c in cycles_of(p)] or [1])
        return out

    @cached_property
    def parities(self) -> np.ndarray:
        return _parities(self.perms)


def _parities(perms: np.ndarray) -> np.ndarray:
    # parity = (n - number of cycles) mod 2, counted via pointer chasing
    m, n = perms.shape
    seen = np.zeros((m, n), dtype=bool)
    ncyc = np.zeros(m, dtype=np.int64)
    rows = np.arange(m)
    for s in range(n):
        fresh = ~seen[:, s]
        ncyc += fresh
        cur = np.full(m, s)
        for _ in range(n):
            seen[rows[fresh], cur[fresh]] = True
            cur = perms[rows, cur]
    return (n - ncyc) % 2


# ---------------------------------------------------------------------------
# direct products


class ProductGroup(GroupHandle):
    """Direct product; element index is the mixed-radix code of factor indices."""

    def __init__(self, spec: GroupSpec, factors: Sequence[GroupHandle]):
        self.spec = spec
        self.factors = tuple(factors)
        self.sizes = tuple(f.size for f in self.factors)
        self.size = math.prod(self.sizes)
        self.is_abelian = all(f.is_abelian for f in self.factors)
        self.coords = np.stack(
            np.unravel_index(np.arange(self.size), self.sizes), axis=-1
        ).astype(np.int64)
        gens = []
        for i, f in enumerate(self.factors):
            for g in f.generators:
                c = [0] * len(self.factors)
                c[i] = g
                gens.append(self.element(*c))
        self.generators = tuple(gens)

    def encode(self, coords) -> np.ndarray:
        c = np.asarray(coords, dtype=np.int64)
        return np.ravel_multi_index(tuple(np.moveaxis(c, -1, 0)), self.sizes)

    def element(self, *coords: int) -> int:
        return int(self.encode(coords))

    def mul(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        ca, cb = self.coords[a], self.coords[b]
        parts = [f.mul(ca[..., i], cb[..., i]) for i, f in enumerate(self.factors)]
        return self.encode(np.stack(parts, axis=-1))

    def inv(self, a):
        ca = self.coords[np.asarray(a)]
        parts = [f.inv(ca[..., i]) for i, f in enumerate(self.factors)]
        return self.encode(np.stack(parts, axis=-1))

    def label(self, i: int) -> str:
        return "(" + ", ".join(f.label(int(c)) for f, c in zip(self.factors, self.coords[i])) + ")"

    @cached_property
    def orders(self) -> np.ndarray:
        out = np.ones(self.size, dtype=np.int64)
        for i, f in enumerate(self.factors):
            out = np.lcm(out, f.orders[self.coords[:, i]])
        return out


# ---------------------------------------------------------------------------


def build_group(spec: GroupSpec) -> GroupHandle:
    validate(spec)
    if isinstance(spec, Cyclic):
        return CyclicGroup(spec)
    if isinstance(spec, AbelianP):
        return AbelianPGroup(spec)
    if isinstance(spec, Dihedral):
        return DihedralGroup(spec)
    if isinstance(spec, Quaternion):
        return QuaternionGroup(spec)
    if isinstance(spec, Heisenberg):
        return HeisenbergGroup(spec)
    if isinstance(spec, (Symmetric, Alternating)):
        if spec.n > 10:
            raise InvalidSpec(f"degree {spec.n} is too large to enumerate")
        return PermGroup(spec)
    if isinstance(spec, Abelian):
        return ProductGroup(spec, [AbelianPGroup(q) for q in spec.parts])
    if isinstance(spec, CoprimeProduct):
        return ProductGroup(spec, [build_group(f) for f in spec.factors])
    raise InvalidSpec(f"not a group spec: {spec!r}")


def pair_generates_cyclic(G: GroupHandle, x: int, y: int) -> bool:
    """Is ``<x, y>`` cyclic?  Works from the closure, not from orders alone."""
    if not G.commutes(x, y):
        return False
    sub = G.closure([x, y])
    return int(G.orders[sub].max()) == sub.size


def power_adjacent(G: GroupHandle, x: int, y: int) -> bool:
    return bool(np.isin(y, G.cyclic_subgroup(x)) or np.isin(x, G.cyclic_subgroup(y)))


def check_order(G: GroupHandle) -> None:
    if G.size != spec_order(G.spec):
        raise AssertionError(f"{format_spec(G.spec)}: size {G.size} != {spec_order(G.spec)}")
