"""Cover oracles: decide whether lifts of two commuting elements commute.

Every oracle exposes ``row(x, ys) -> bool array`` (batch) and
``adjacent(x, y)`` (single pair).  ``row`` is False wherever x and y do not
commute in G; the entry for ``y == x`` is unspecified.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from . import spin
from .catalog import covers
from .catalog.groups import (
    AbelianPGroup,
    DihedralGroup,
    GroupHandle,
    PermGroup,
    ProductGroup,
    TupleGroup,
    build_group,
)
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
    format_spec,
)
from .errors import CapExceeded, NotCoprime, Unsupported
from .fpgroup import (
    DEFAULT_MAX_COSETS,
    CoverCache,
    PermRep,
    Presentation,
    Word,
    _letter_col,
    enumerate_cached,
)


def coerce_element(G: GroupHandle, x) -> int:
    """Accept an index, a label, a coordinate tuple or a permutation."""
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, str):
        return G.index(x)
    if isinstance(G, ProductGroup):
        return G.element(*[coerce_element(f, c) for f, c in zip(G.factors, x)])
    if isinstance(G, TupleGroup):
        return int(G.encode(tuple(x)))
    if isinstance(G, PermGroup):
        return G.from_perm(tuple(x))
    raise TypeError(f"cannot interpret {x!r} as an element of {G!r}")


class CoverOracle:
    provenance = "closed-form"

    def __init__(self, G: GroupHandle):
        self.G = G

    def row(self, x: int, ys: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def adjacent(self, x, y) -> bool:
        x, y = coerce_element(self.G, x), coerce_element(self.G, y)
        if x == y:
            return False
        return bool(self.row(x, np.asarray([y]))[0])

    __call__ = adjacent

    def _commuting(self, x: int, ys: np.ndarray) -> np.ndarray:
        if self.G.is_abelian:
            return np.ones(len(ys), dtype=bool)
        xs = np.full(len(ys), x)
        return self.G.mul(xs, ys) == self.G.mul(ys, xs)


class CommutingOracle(CoverOracle):
    """For groups that are their own Schur cover: adjacency is commuting."""

    def row(self, x, ys):
        return self._commuting(int(x), np.asarray(ys))


class AbelianOracle(CoverOracle):
    """x ~ y iff s_i t_j = s_j t_i mod p^{r_j} for all i < j (bilinear commutator form)."""

    def __init__(self, G: AbelianPGroup):
        super().__init__(G)
        self.p = G.spec.p
        self.ranks = G.spec.ranks
        self.mods = [self.p**r for r in self.ranks]

    def row(self, x, ys):
        S = self.G.coords[int(x)]
        T = self.G.coords[np.asarray(ys)]
        ok = np.ones(T.shape[0], dtype=bool)
        k = len(self.ranks)
        for i in range(k):
            for j in range(i + 1, k):
                ok &= (S[i] * T[:, j] - S[j] * T[:, i]) % self.mods[j] == 0
        return ok


def abelian_oracle(p: int, ranks: Sequence[int]) -> AbelianOracle:
    return AbelianOracle(build_group(AbelianP(p, tuple(ranks))))


class DihedralOracle(CoverOracle):
    """n odd: commuting.  n even: rotations pairwise; a^0 with reflections; nothing else."""

    def __init__(self, G: DihedralGroup):
        super().__init__(G)
        self.n = G.n

    def row(self, x, ys):
        ys = np.asarray(ys)
        if self.n % 2:
            return self._commuting(int(x), ys)
        jx = self.G.coords[int(x), 0]
        J = self.G.coords[ys, 0]
        I = self.G.coords[ys, 1]
        if jx == 0:
            ix = self.G.coords[int(x), 1]
            return (J == 0) | (ix == 0)
        return (J == 0) & (I == 0)


def dihedral_oracle(n: int) -> DihedralOracle:
    return DihedralOracle(build_group(Dihedral(2 * n)))


def quaternion_oracle(n: int) -> CommutingOracle:
    return CommutingOracle(build_group(Quaternion(4 * n)))


class SpinOracle(CoverOracle):
    """Lifts to the Clifford algebra; serves S_n and A_n (n not 6, 7)."""

    provenance = "spin"
    DENSE_TABLE_LIMIT = 12_000_000

    def __init__(self, G: PermGroup):
        if isinstance(G.spec, Alternating) and G.spec.n in (6, 7):
            raise Unsupported("A_6 and A_7 have a sixfold cover; use the engine oracle")
        if G.n > spin.DENSE_CAP:
            raise CapExceeded(f"spin oracle is capped at degree {spin.DENSE_CAP}")
        super().__init__(G)
        self.n = G.n
        self._table = None
        if G.size * (1 << G.n) <= self.DENSE_TABLE_LIMIT:
            self._table = spin.dense_lifts(G.perms)

    def lifts(self, idx: np.ndarray) -> np.ndarray:
        if self._table is not None:
            return self._table[idx]
        return spin.dense_lifts(self.G.perms[idx])

    def row(self, x, ys):
        ys = np.asarray(ys)
        u = self.lifts(np.asarray([int(x)]))[0]
        return spin.commuting_mask(u, self.lifts(ys), self.n)


def spin_oracle(n: int, alternating: bool = False) -> SpinOracle:
    return SpinOracle(build_group(Alternating(n) if alternating else Symmetric(n)))


class _Tree:
    """BFS spanning tree of G over the projected cover generators."""

    def __init__(self, G: GroupHandle, images: Sequence[int]):
        letters = []
        for k, g in enumerate(images):
            if g != 0:
                letters.append((k + 1, int(g)))
                letters.append((-(k + 1), int(G.inv(g))))
        parent = np.full(G.size, -1, dtype=np.int64)
        letter = np.zeros(G.size, dtype=np.int64)
        seen = np.zeros(G.size, dtype=bool)
        seen[0] = True
        frontier = np.array([0])
        levels = [frontier]
        while frontier.size:
            new = []
            for lt, g in letters:
                y = G.mul(frontier, np.full(frontier.size, g))
                fresh = ~seen[y]
                y, src = y[fresh], frontier[fresh]
                y, first = np.unique(y, return_index=True)
                seen[y] = True
                parent[y] = src[first]
                letter[y] = lt
                new.append(y)
            frontier = np.concatenate(new) if new else np.array([], dtype=np.int64)
            if frontier.size:
                levels.append(frontier)
        if not seen.all():
            raise ValueError("projected generators do not generate the group")
        self.parent, self.letter, self.levels = parent, letter, levels

    def word(self, x: int) -> Word:
        out = []
        while x != 0:
            out.append(int(self.letter[x]))
            x = int(self.parent[x])
        return tuple(reversed(out))

    def traverse(self, table: np.ndarray, start: int) -> np.ndarray:
        """``out[y] = start ^ word(y)`` under the coset action."""
        out = np.empty(self.parent.size, dtype=np.int64)
        out[0] = start
        for lvl in self.levels[1:]:
            cols = np.where(self.letter[lvl] > 0, 2 * (self.letter[lvl] - 1), 2 * (-self.letter[lvl] - 1) + 1)
            out[lvl] = table[out[self.parent[lvl]], cols]
        return out


def default_subgroup(spec) -> tuple[Word, ...]:
    """A subgroup of the cover meeting the central kernel trivially.

    For these families the first generator lifts an element of the same order,
    so its cyclic subgroup avoids the kernel and the coset action stays
    faithful on commutators of commuting pairs.
    """
    if isinstance(spec, (AbelianP, Heisenberg)):
        return ((1,),)
    return ()


class EngineOracle(CoverOracle):
    """Commutator test in an enumerated cover.

    For x, y commuting in G, c = [x~, y~] is central in the cover; with a
    subgroup H meeting the kernel trivially, c = e iff 0^(x~y~) = 0^(y~x~).
    """

    provenance = "engine"

    def __init__(
        self,
        G: GroupHandle,
        presentation: Presentation | None = None,
        images: Sequence[int] | None = None,
        subgroup: Sequence[Word] | None = None,
        rep: PermRep | None = None,
        max_cosets: int = DEFAULT_MAX_COSETS,
        cache: CoverCache | None = None,
    ):
        super().__init__(G)
        if presentation is None:
            presentation = covers.schur_cover_presentation(G.spec)
            if isinstance(presentation, covers.SelfCover):
                raise Unsupported(f"{presentation.reason}; no proper cover to enumerate")
        if images is None:
            images = covers.projection_images(G.spec, G, presentation)
        covers.check_projection(G, presentation, list(images))
        if subgroup is None:
            subgroup = default_subgroup(G.spec)
        self.presentation = presentation
        self.images = list(images)
        self.subgroup = tuple(tuple(w) for w in subgroup)
        if rep is None:
            label = format_spec(G.spec) + ("" if not self.subgroup else
                                            " / <" + ", ".join(presentation.word_text(w) for w in self.subgroup) + ">")
            rep = enumerate_cached(presentation, self.subgroup, max_cosets, cache, label)
        self.rep = rep
        self.tree = _Tree(G, self.images)
        self.Q = self.tree.traverse(rep.table, 0)  # Q[y] = 0^(y~)
        self._words: dict[int, Word] = {}

    def lift_word(self, x: int) -> Word:
        w = self._words.get(x)
        if w is None:
            w = self._words[x] = self.tree.word(int(x))
        return w

    def _apply(self, pts: np.ndarray, w: Word) -> np.ndarray:
        t = self.rep.table
        for lt in w:
            pts = t[pts, _letter_col(lt)]
        return pts

    def row(self, x, ys):
        x = int(x)
        ys = np.asarray(ys)
        comm = self._commuting(x, ys)
        xy = self.tree.traverse(self.rep.table, int(self.Q[x]))[ys]  # 0^(x~ y~)
        yx = self._apply(self.Q[ys], self.lift_word(x))  # 0^(y~ x~)
        return comm & (xy == yx)

    def words_commute(self, u: Word, v: Word) -> bool:
        """Do the cover elements spelled by ``u`` and ``v`` commute (given central commutator)?"""
        return bool(self._apply(np.array([0]), tuple(u) + tuple(v))[0]
                    == self._apply(np.array([0]), tuple(v) + tuple(u))[0])


class CoprimeProductOracle(CoverOracle):
    """Strong-product rule over a coprime factorisation."""

    def __init__(self, G: GroupHandle, factor_oracles: Sequence[CoverOracle], maps: Sequence[np.ndarray]):
        super().__init__(G)
        orders = [o.G.size for o in factor_oracles]
        for i in range(len(orders)):
            for j in range(i + 1, len(orders)):
                if math.gcd(orders[i], orders[j]) != 1:
                    raise NotCoprime(f"factor orders {orders[i]} and {orders[j]} share a prime")
        self.factor_oracles = list(factor_oracles)
        self.maps = [np.asarray(m) for m in maps]
        kinds = {o.provenance for o in factor_oracles}
        self.provenance = kinds.pop() if len(kinds) == 1 else "mixed"

    def row(self, x, ys):
        ys = np.asarray(ys)
        ok = np.ones(ys.size, dtype=bool)
        for o, m in zip(self.factor_oracles, self.maps):
            xi, yi = int(m[int(x)]), m[ys]
            ok &= (yi == xi) | o.row(xi, yi)
        return ok


def coprime_product_oracle(G: GroupHandle, **kw) -> CoprimeProductOracle:
    parts = covers.coprime_split(G.spec)
    oracles = [default_oracle(build_group(s), **kw) for s, _ in parts]
    return CoprimeProductOracle(G, oracles, [m for _, m in parts])


def default_oracle(G: GroupHandle, **engine_kw) -> CoverOracle:
    """Fastest trustworthy oracle for a catalog group."""
    spec = G.spec
    if isinstance(spec, Cyclic):
        return CommutingOracle(G)
    if isinstance(spec, AbelianP):
        return CommutingOracle(G) if len(spec.ranks) == 1 else AbelianOracle(G)
    if isinstance(spec, Quaternion):
        return CommutingOracle(G)
    if isinstance(spec, Dihedral):
        return DihedralOracle(G)
    if isinstance(spec, Heisenberg):
        return EngineOracle(G, **engine_kw)
    if isinstance(spec, Symmetric):
        return CommutingOracle(G) if spec.n == 3 else SpinOracle(G)
    if isinstance(spec, Alternating):
        if spec.n == 3:
            return CommutingOracle(G)
        if spec.n in (6, 7):
            return EngineOracle(G, **engine_kw)
        return SpinOracle(G)
    if isinstance(spec, (Abelian, CoprimeProduct)):
        return coprime_product_oracle(G, **engine_kw)
    raise Unsupported(repr(spec))


def cross_validate(a: CoverOracle, b: CoverOracle, G: GroupHandle) -> list[tuple[int, int]]:
    """All commuting pairs x < y on which the two oracles disagree."""
    bad = []
    for x in range(G.size):
        ys = G.centralizer(x)
        ys = ys[ys > x]
        if ys.size == 0:
            continue
        diff = a.row(x, ys) != b.row(x, ys)
        bad += [(x, int(y)) for y in ys[diff]]
    return bad
