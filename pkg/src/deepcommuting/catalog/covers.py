"""Schur cover presentations, the metacyclic multiplier formula, coprime splits."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import InvalidParams, NotCoprime, Unsupported
from ..fpgroup import Presentation, Word, commutator_word, inverse_word, power_word
from .groups import (
    AbelianPGroup,
    DihedralGroup,
    GroupHandle,
    HeisenbergGroup,
    PermGroup,
    build_group,
)
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
    factorize,
    spec_order,
    validate,
)

# ---------------------------------------------------------------------------
# metacyclic multiplier


@dataclass(frozen=True)
class MetacyclicParams:
    """``<a, b | a^m, b^s = a^t, b^-1 a b = a^r>``."""

    m: int
    s: int
    t: int
    r: int

    def check(self) -> None:
        m, s, t, r = self.m, self.s, self.t, self.r
        if min(m, s, t, r) < 1:
            raise InvalidParams("metacyclic parameters must be positive")
        if pow(r, s, m) != 1 % m:
            raise InvalidParams(f"r^s = {r}^{s} is not 1 mod {m}")
        if (t * (r - 1)) % m:
            raise InvalidParams(f"{m} does not divide t(r-1) = {t * (r - 1)}")
        if m % t:
            raise InvalidParams(f"t = {t} does not divide m = {m}")


def metacyclic_multiplier_order(p: MetacyclicParams) -> int:
    p.check()
    geo = sum(p.r**i for i in range(p.s))
    l = math.gcd(geo, p.t)
    num = math.gcd(p.r - 1, p.m) * l
    if num % p.m:
        raise InvalidParams("formula did not give an integer; parameters inconsistent")
    return num // p.m


def dihedral_params(n: int) -> MetacyclicParams:
    """``D_2n``: a^n = b^2 = e, b^-1 a b = a^-1."""
    return MetacyclicParams(m=n, s=2, t=n, r=n - 1)


def quaternion_params(n: int) -> MetacyclicParams:
    """``Q_4n``: a^(2n) = e, b^2 = a^n, b^-1 a b = a^-1."""
    return MetacyclicParams(m=2 * n, s=2, t=n, r=2 * n - 1)


# ---------------------------------------------------------------------------
# cover presentations


@dataclass(frozen=True)
class SelfCover:
    spec: GroupSpec
    reason: str


def _g(i: int) -> Word:
    return (i,)


def abelian_p_cover(p: int, ranks: tuple[int, ...]) -> Presentation:
    k = len(ranks)
    names = [f"x{i + 1}" for i in range(k)]
    pairs = [(j, l) for j in range(k) for l in range(j + 1, k)]
    names += [f"a{j + 1}{l + 1}" if k < 10 else f"a{j + 1}_{l + 1}" for j, l in pairs]
    rels: list[Word] = [power_word(_g(i + 1), p ** ranks[i]) for i in range(k)]
    kernel = []
    for idx, (j, l) in enumerate(pairs):
        a = k + idx + 1
        kernel.append(a - 1)
        rels.append(commutator_word(_g(j + 1), _g(l + 1)) + (-a,))
        for i in range(k):
            rels.append(commutator_word(_g(i + 1), _g(a)))
    return Presentation(tuple(names), tuple(rels), tuple(kernel))


def cyclic_presentation(n: int, name: str = "x") -> Presentation:
    return Presentation((name,), (power_word((1,), n),), ())


def dihedral_double_cover(n: int) -> Presentation:
    """``D_4n`` over ``D_2n`` (n even), kernel generated by c = a^n."""
    rels = (power_word((1,), 2 * n), (2, 2), (1, 2, 1, 2), (-3,) + power_word((1,), n))
    return Presentation(("a", "b", "c"), rels, (2,))


def heisenberg_cover(p: int, k: int) -> Presentation:
    q = p**k
    # y1, y2, w, w1, w2 = 1..5
    rels: list[Word] = [
        commutator_word((1,), (2,)) + (-3,),
        commutator_word((1,), (3,)) + (-4,),
        commutator_word((2,), (3,)) + (-5,),
    ]
    rels += [power_word((g,), q) for g in range(1, 6)]
    for c in (4, 5):
        for g in range(1, 6):
            if g != c:
                rels.append(commutator_word((c,), (g,)))
    return Presentation(("y1", "y2", "w", "w1", "w2"), tuple(rels), (3, 4))


def symmetric_cover(n: int) -> Presentation:
    """Generators g1..g_{n-1} (over adjacent transpositions) and central z."""
    z = n
    rels: list[Word] = []
    for i in range(1, n):
        rels.append((i, i, -z))
    for j in range(1, n - 1):
        rels.append(power_word((j, j + 1), 3) + (-z,))
    for k in range(1, n):
        for l in range(k + 2, n):
            rels.append(power_word((k, l), 2) + (-z,))
    rels.append((z, z))
    for i in range(1, n):
        rels.append(commutator_word((z,), (i,)))
    names = tuple(f"g{i}" for i in range(1, n)) + ("z",)
    return Presentation(names, tuple(rels), (n - 1,))


def alternating_cover(n: int) -> Presentation:
    """Sixfold cover for n in {6, 7}: h1..h_{n-2} and central zeta of order 6."""
    if n not in (6, 7):
        raise Unsupported("the sixfold cover exists only for n = 6, 7")
    m = n - 2
    zeta = m + 1
    z3 = inverse_word((zeta,) * 3)
    rels: list[Word] = [(1, 1, 1) + z3]
    for i in range(2, m + 1):
        rels.append((i, i) + z3)
        rels.append(power_word((i - 1, i), 3) + z3)
    for k in range(1, m + 1):
        for j in range(1, k - 1):
            if (j, k) != (1, 4):
                rels.append(power_word((j, k), 2) + z3)
    rels.append(power_word((1, 4), 2) + (-zeta,))
    rels.append(power_word((zeta,), 6))
    for t in range(1, m + 1):
        rels.append(commutator_word((zeta,), (t,)))
    names = tuple(f"h{i}" for i in range(1, m + 1)) + ("zeta",)
    return Presentation(names, tuple(rels), (m,))


def schur_cover_presentation(spec: GroupSpec) -> Presentation | SelfCover:
    validate(spec)
    if isinstance(spec, Cyclic):
        return SelfCover(spec, "cyclic groups have trivial multiplier")
    if isinstance(spec, AbelianP):
        if len(spec.ranks) == 1:
            return SelfCover(spec, "cyclic groups have trivial multiplier")
        return abelian_p_cover(spec.p, spec.ranks)
    if isinstance(spec, Quaternion):
        return SelfCover(spec, "generalized quaternion groups have trivial multiplier")
    if isinstance(spec, Dihedral):
        if spec.n % 2:
            return SelfCover(spec, "D_2n with n odd has trivial multiplier")
        return dihedral_double_cover(spec.n)
    if isinstance(spec, Heisenberg):
        return heisenberg_cover(spec.p, spec.k)
    if isinstance(spec, Symmetric):
        if spec.n == 3:
            return SelfCover(spec, "S_3 has trivial multiplier")
        return symmetric_cover(spec.n)
    if isinstance(spec, Alternating):
        if spec.n == 3:
            return SelfCover(spec, "A_3 is cyclic")
        if spec.n in (6, 7):
            return alternating_cover(spec.n)
        raise Unsupported(f"no presentation for the cover of A_{spec.n}; use the spin oracle")
    raise Unsupported("no cover presentation for products; use the strong-product oracle")


def projection_images(spec: GroupSpec, G: GroupHandle, p: Presentation) -> list[int]:
    """Image in ``G`` of every presentation generator (kernel generators map to e)."""
    if isinstance(spec, AbelianP):
        assert isinstance(G, AbelianPGroup)
        k = len(spec.ranks)
        return list(G.generators) + [0] * (p.generator_count - k)
    if isinstance(spec, Dihedral):
        assert isinstance(G, DihedralGroup)
        return [G.rotation(1), G.reflection(0), 0]
    if isinstance(spec, Heisenberg):
        assert isinstance(G, HeisenbergGroup)
        return [G.element(1, 0, 0), G.element(0, 1, 0), G.element(0, 0, 1), 0, 0]
    if isinstance(spec, Symmetric):
        assert isinstance(G, PermGroup)
        return [G.from_cycles(f"({i},{i + 1})") for i in range(1, spec.n)] + [0]
    if isinstance(spec, Alternating):
        assert isinstance(G, PermGroup)
        imgs = [G.from_cycles("(1,2,3)")]
        imgs += [G.from_cycles(f"(1,2)({i + 1},{i + 2})") for i in range(2, spec.n - 1)]
        return imgs + [0]
    raise Unsupported(f"no projection for {spec!r}")


def check_projection(G: GroupHandle, p: Presentation, images: list[int]) -> None:
    """Relators map to e and the images generate G; raises ValueError otherwise."""
    for r in p.relators:
        x = 0
        for letter in r:
            g = images[abs(letter) - 1]
            x = G.mul1(x, g if letter > 0 else int(G.inv(g)))
        if x != 0:
            raise ValueError(f"relator {p.word_text(r)} does not map to the identity")
    if G.closure([g for g in images if g]).size != G.size:
        raise ValueError("generator images do not generate the group")


def multiplier_order(spec: GroupSpec) -> int:
    """Order of the Schur multiplier for catalog families."""
    validate(spec)
    if isinstance(spec, Cyclic):
        return 1
    if isinstance(spec, AbelianP):
        p = spec.p
        return math.prod(p ** (r * i) for i, r in enumerate(spec.ranks))
    if isinstance(spec, Dihedral):
        return metacyclic_multiplier_order(dihedral_params(spec.n))
    if isinstance(spec, Quaternion):
        return metacyclic_multiplier_order(quaternion_params(spec.n))
    if isinstance(spec, Heisenberg):
        return spec.p ** (2 * spec.k)
    if isinstance(spec, Symmetric):
        return 1 if spec.n <= 3 else 2
    if isinstance(spec, Alternating):
        return 1 if spec.n <= 3 else (6 if spec.n in (6, 7) else 2)
    if isinstance(spec, Abelian):
        return math.prod(multiplier_order(q) for q in spec.parts)
    if isinstance(spec, CoprimeProduct):
        # coprime orders: M(G x H) = M(G) x M(H)
        return math.prod(multiplier_order(f) for f in spec.factors)
    raise Unsupported(repr(spec))


# ---------------------------------------------------------------------------
# coprime decomposition


CoordinateMap = Callable[[np.ndarray], np.ndarray]


def coprime_split(spec: GroupSpec) -> list[tuple[GroupSpec, np.ndarray]]:
    """Pairwise-coprime factors, each with an index map ``G -> factor``.

    ``maps[i][g]`` is the index of the i-th coordinate of ``g``; together the
    maps are a bijection ``G -> prod(factors)``.
    """
    validate(spec)
    G = build_group(spec)
    return [(s, m) for s, m in _split(spec, G, np.arange(G.size))]


def _split(spec: GroupSpec, G: GroupHandle, idx: np.ndarray):
    if isinstance(spec, Cyclic):
        fac = factorize(spec.n)
        if len(fac) <= 1:
            return [(spec, idx)]
        return [(Cyclic(p**e), idx % (p**e)) for p, e in fac]
    if isinstance(spec, (Abelian, CoprimeProduct)):
        parts = spec.parts if isinstance(spec, Abelian) else spec.factors
        orders = [spec_order(f) for f in parts]
        for i in range(len(orders)):
            for j in range(i + 1, len(orders)):
                if math.gcd(orders[i], orders[j]) != 1:
                    raise NotCoprime(f"factor orders {orders[i]} and {orders[j]} share a prime")
        out = []
        for i, (f, Fi) in enumerate(zip(parts, G.factors)):
            out += _split(f, Fi, G.coords[idx, i])
        return out
    return [(spec, idx)]
