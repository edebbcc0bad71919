"""Group specifications and their canonical text form.

Text forms::

    cyc:6  abelianp:3:2,1  abelian(abelianp:2:1;abelianp:3:2,1)
    dih:12  quat:8  heis:3:2  sym:6  alt:7  prod(abelianp:2:1,1;cyc:9)

``dih`` and ``quat`` take the group order, matching the usual D_2n / Q_4n names.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from ..errors import InvalidSpec, NotCoprime


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class AbelianP:
    p: int
    ranks: tuple[int, ...]

    def __init__(self, p: int, ranks):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "ranks", tuple(ranks))


@dataclass(frozen=True)
class Abelian:
    parts: tuple[AbelianP, ...]

    def __init__(self, parts):
        object.__setattr__(self, "parts", tuple(parts))


@dataclass(frozen=True)
class Dihedral:
    order: int

    @property
    def n(self) -> int:
        return self.order // 2


@dataclass(frozen=True)
class Quaternion:
    order: int

    @property
    def n(self) -> int:
        return self.order // 4


@dataclass(frozen=True)
class Heisenberg:
    p: int
    k: int


@dataclass(frozen=True)
class Symmetric:
    n: int


@dataclass(frozen=True)
class Alternating:
    n: int


@dataclass(frozen=True)
class CoprimeProduct:
    factors: tuple["GroupSpec", ...]

    def __init__(self, factors):
        object.__setattr__(self, "factors", tuple(factors))


GroupSpec = Union[
    Cyclic, AbelianP, Abelian, Dihedral, Quaternion, Heisenberg, Symmetric, Alternating, CoprimeProduct
]


def spec_order(spec: GroupSpec) -> int:
    if isinstance(spec, Cyclic):
        return spec.n
    if isinstance(spec, AbelianP):
        return spec.p ** sum(spec.ranks)
    if isinstance(spec, Abelian):
        return math.prod(spec_order(q) for q in spec.parts)
    if isinstance(spec, (Dihedral, Quaternion)):
        return spec.order
    if isinstance(spec, Heisenberg):
        return spec.p ** (3 * spec.k)
    if isinstance(spec, Symmetric):
        return math.factorial(spec.n)
    if isinstance(spec, Alternating):
        return math.factorial(spec.n) // 2
    if isinstance(spec, CoprimeProduct):
        return math.prod(spec_order(f) for f in spec.factors)
    raise InvalidSpec(f"not a group spec: {spec!r}")


def validate(spec: GroupSpec) -> GroupSpec:
    """Check parameter bounds; raises InvalidSpec (NotCoprime for products)."""
    if isinstance(spec, Cyclic):
        if spec.n < 1:
            raise InvalidSpec("cyclic order must be >= 1")
    elif isinstance(spec, AbelianP):
        if not is_prime(spec.p):
            raise InvalidSpec(f"{spec.p} is not prime")
        if not spec.ranks or any(r < 1 for r in spec.ranks):
            raise InvalidSpec("abelian p-group ranks must be positive")
        if list(spec.ranks) != sorted(spec.ranks, reverse=True):
            raise InvalidSpec("abelian p-group ranks must be sorted descending")
    elif isinstance(spec, Abelian):
        if not spec.parts:
            raise InvalidSpec("abelian group needs at least one part")
        for q in spec.parts:
            if not isinstance(q, AbelianP):
                raise InvalidSpec("abelian parts must be abelian p-groups")
            validate(q)
        primes = [q.p for q in spec.parts]
        if len(set(primes)) != len(primes):
            raise NotCoprime("abelian parts must have distinct primes")
    elif isinstance(spec, Dihedral):
        if spec.order % 2 or spec.order < 6:
            raise InvalidSpec("dihedral order must be even and >= 6")
    elif isinstance(spec, Quaternion):
        if spec.order % 4 or spec.order < 8:
            raise InvalidSpec("quaternion order must be a multiple of 4 and >= 8")
    elif isinstance(spec, Heisenberg):
        if spec.p == 2 or not is_prime(spec.p) or spec.k < 1:
            raise InvalidSpec("Heisenberg group needs an odd prime p and k >= 1")
    elif isinstance(spec, (Symmetric, Alternating)):
        if spec.n < 3:
            raise InvalidSpec("permutation degree must be >= 3")
    elif isinstance(spec, CoprimeProduct):
        if not spec.factors:
            raise InvalidSpec("product needs at least one factor")
        for f in spec.factors:
            validate(f)
        orders = [spec_order(f) for f in spec.factors]
        for i in range(len(orders)):
            for j in range(i + 1, len(orders)):
                if math.gcd(orders[i], orders[j]) != 1:
                    raise NotCoprime(
                        f"factor orders {orders[i]} and {orders[j]} are not coprime"
                    )
    else:
        raise InvalidSpec(f"not a group spec: {spec!r}")
    return spec


def format_spec(spec: GroupSpec) -> str:
    if isinstance(spec, Cyclic):
        return f"cyc:{spec.n}"
    if isinstance(spec, AbelianP):
        return f"abelianp:{spec.p}:{','.join(map(str, spec.ranks))}"
    if isinstance(spec, Abelian):
        return "abelian(" + ";".join(format_spec(q) for q in spec.parts) + ")"
    if isinstance(spec, Dihedral):
        return f"dih:{spec.order}"
    if isinstance(spec, Quaternion):
        return f"quat:{spec.order}"
    if isinstance(spec, Heisenberg):
        return f"heis:{spec.p}:{spec.k}"
    if isinstance(spec, Symmetric):
        return f"sym:{spec.n}"
    if isinstance(spec, Alternating):
        return f"alt:{spec.n}"
    if isinstance(spec, CoprimeProduct):
        return "prod(" + ";".join(format_spec(f) for f in spec.factors) + ")"
    raise InvalidSpec(f"not a group spec: {spec!r}")


def _split_top(s: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise InvalidSpec("unbalanced parentheses")
        if ch == ";" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise InvalidSpec("unbalanced parentheses")
    parts.append("".join(cur))
    return parts


def _int(tok: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InvalidSpec(f"expected an integer, got {tok!r}") from None


def parse_spec(text: str) -> GroupSpec:
    """Parse and validate the canonical text form."""
    s = text.strip().replace(" ", "")
    for head, cls in (("prod(", CoprimeProduct), ("abelian(", Abelian)):
        if s.startswith(head):
            if not s.endswith(")"):
                raise InvalidSpec(f"missing ')' in {text!r}")
            inner = s[len(head) : -1]
            return validate(cls([parse_spec(t) for t in _split_top(inner)]))
    fields = s.split(":")
    kind, args = fields[0], fields[1:]
    arity = {"cyc": 1, "abelianp": 2, "dih": 1, "quat": 1, "heis": 2, "sym": 1, "alt": 1}
    if kind not in arity:
        raise InvalidSpec(f"unknown group family {kind!r}")
    if len(args) != arity[kind]:
        raise InvalidSpec(f"{kind} expects {arity[kind]} parameter(s)")
    if kind == "abelianp":
        ranks = tuple(_int(r) for r in args[1].split(",") if r != "")
        spec: GroupSpec = AbelianP(_int(args[0]), ranks)
    else:
        vals = [_int(a) for a in args]
        spec = {
            "cyc": Cyclic,
            "dih": Dihedral,
            "quat": Quaternion,
            "heis": Heisenberg,
            "sym": Symmetric,
            "alt": Alternating,
        }[kind](*vals)
    return validate(spec)
