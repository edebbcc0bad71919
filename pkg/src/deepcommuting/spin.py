"""Lifts of permutations to the Clifford algebra with e_i^2 = +1.

A transposition (a b) lifts to the vector e_a - e_b (normalisation (√2)^-1
is tracked as an integer ``scale`` and never applied).  These lifts generate
a double cover of S_n in which lifted transpositions square to +1 and
disjoint ones anticommute, which is all the deep commuting graph needs.

Basis monomials e_A are indexed by bitmasks A over 0-based points.  The sign
of e_A e_B is (-1)^(#{(i, j): i in A, j in B, i > j}).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .catalog.groups import cycles_of, perm_from_cycles
from .errors import CapExceeded

DEFAULT_SPIN_CAP = 12
DENSE_CAP = 10


def _popcount(x: int) -> int:
    return bin(x).count("1")


def blade_sign(a: int, b: int) -> int:
    """Sign of e_a * e_b for monomial masks a, b."""
    s = 0
    a >>= 1
    while a:
        s += _popcount(a & b)
        a >>= 1
    return -1 if s & 1 else 1


@dataclass(frozen=True)
class SpinLift:
    terms: dict[int, int] = field(hash=False)
    scale: int = 0

    def __mul__(self, other: "SpinLift") -> "SpinLift":
        out: dict[int, int] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                m = a ^ b
                out[m] = out.get(m, 0) + blade_sign(a, b) * ca * cb
        return SpinLift({m: c for m, c in out.items() if c}, self.scale + other.scale)

    def is_scalar(self) -> bool:
        return set(self.terms) <= {0}


def as_perm(sigma, n: int | None = None) -> tuple[int, ...]:
    if isinstance(sigma, str):
        if n is None:
            digits = [int(c) for c in sigma if c.isdigit()]
            n = max(digits, default=1)
        return perm_from_cycles(sigma, n)
    return tuple(int(i) for i in sigma)


def transpositions(perm: Sequence[int]) -> list[tuple[int, int]]:
    """Cycles by increasing smallest point; (a1 ... ar) -> (a1 a2)(a2 a3)...

    The product equals the cycle when composed right to left, so every lift
    covers the inverse permutation in our left-to-right convention.  That is
    applied uniformly, and x~y iff x^-1~y^-1, so adjacency is unaffected.
    """
    out = []
    for c in cycles_of(perm):
        out += [(c[i], c[i + 1]) for i in range(len(c) - 1)]
    return out


def spin_lift(sigma, n: int | None = None, cap: int = DEFAULT_SPIN_CAP) -> SpinLift:
    perm = as_perm(sigma, n)
    if len(perm) > cap:
        raise CapExceeded(f"spin lifts are capped at degree {cap}")
    x = SpinLift({0: 1}, 0)
    for a, b in transpositions(perm):
        x = x * SpinLift({1 << a: 1, 1 << b: -1}, 1)
    return x


def spin_commute(sigma, tau, n: int | None = None, cap: int = DEFAULT_SPIN_CAP) -> bool:
    if n is None and isinstance(sigma, str) and isinstance(tau, str):
        digits = [int(c) for c in sigma + tau if c.isdigit()]
        n = max(digits, default=1)
    x, y = spin_lift(sigma, n, cap), spin_lift(tau, n, cap)
    return (x * y).terms == (y * x).terms


# ---------------------------------------------------------------------------
# dense batch arithmetic


@lru_cache(maxsize=None)
def sign_table(n: int) -> np.ndarray:
    """``S[a, b]`` = sign of e_a e_b, as float64."""
    if n > DENSE_CAP:
        raise CapExceeded(f"dense spin arithmetic is capped at degree {DENSE_CAP}")
    d = 1 << n
    masks = np.arange(d, dtype=np.int64)
    cnt = np.zeros((d, d), dtype=np.int64)
    for j in range(n):
        inb = ((masks >> j) & 1).astype(bool)
        above = np.bitwise_count((masks >> (j + 1)).astype(np.uint64)).astype(np.int64)
        cnt[:, inb] += above[:, None]
    return np.where(cnt % 2 == 1, -1.0, 1.0)


def dense_lifts(perms: np.ndarray) -> np.ndarray:
    """Row i = coefficient vector of spin_lift(perms[i]) (scale = #transpositions)."""
    m, n = perms.shape
    d = 1 << n
    masks = np.arange(d, dtype=np.int64)
    flip = [masks ^ (1 << a) for a in range(n)]
    sgn = [
        np.where(np.bitwise_count((masks >> (a + 1)).astype(np.uint64)) % 2 == 1, -1.0, 1.0)
        for a in range(n)
    ]
    steps = [transpositions(p) for p in perms]
    X = np.zeros((m, d))
    X[:, 0] = 1.0
    depth = max((len(s) for s in steps), default=0)
    for k in range(depth):
        groups: dict[tuple[int, int], list[int]] = {}
        for i, s in enumerate(steps):
            if k < len(s):
                groups.setdefault(s[k], []).append(i)
        for (a, b), rows in groups.items():
            r = np.asarray(rows)
            Y = X[r]
            X[r] = Y[:, flip[a]] * sgn[a] - Y[:, flip[b]] * sgn[b]
    return X


def commutation_operator(u: np.ndarray, n: int) -> np.ndarray:
    """Matrix D with ``v @ D == u*v - v*u`` for coefficient row vectors v."""
    S = sign_table(n)
    d = 1 << n
    idx = np.arange(d)
    x = idx[:, None] ^ idx[None, :]  # x[i, c] = i ^ c
    left = S[x, idx[:, None]] * u[x]  # (u v)[c] = sum_b S[c^b, b] u[c^b] v[b]
    right = S[idx[:, None], x] * u[x]  # (v u)[c] = sum_a S[a, a^c] v[a] u[a^c]
    return left - right


def commuting_mask(u: np.ndarray, V: np.ndarray, n: int) -> np.ndarray:
    """For each row v of V: does v commute with u?"""
    if V.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    return ~np.any(V @ commutation_operator(u, n), axis=1)
