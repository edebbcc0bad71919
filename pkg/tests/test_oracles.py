import itertools

import numpy as np
import pytest

from deepcommuting.catalog import covers
from deepcommuting.catalog.groups import build_group
from deepcommuting.catalog.specs import (
    Abelian,
    AbelianP,
    Alternating,
    Cyclic,
    Dihedral,
    Heisenberg,
    Quaternion,
    Symmetric,
)
from deepcommuting.errors import CapExceeded, Unsupported
from deepcommuting.fpgroup import coset_enumerate, element_commutator, project_and_lift
from deepcommuting.oracles import (
    EngineOracle,
    abelian_oracle,
    coprime_product_oracle,
    cross_validate,
    default_oracle,
    dihedral_oracle,
    quaternion_oracle,
    spin_oracle,
)
from deepcommuting.spin import spin_commute, spin_lift


def brute_force_deep(spec) -> set[tuple[int, int]]:
    """Deep commuting edges from the regular cover: lift every element, test commutators directly."""
    G = build_group(spec)
    p = covers.schur_cover_presentation(spec)
    rep = coset_enumerate(p)
    proj = project_and_lift(rep, p)
    # quotient index -> G element through the generator images
    images = covers.projection_images(spec, G, p)
    to_G = np.zeros(proj.quotient_order, dtype=np.int64)
    for q in range(proj.quotient_order):
        g = 0
        for letter in proj.lift(q).word:
            h = images[abs(letter) - 1]
            g = G.mul1(g, h if letter > 0 else int(G.inv(h)))
        to_G[q] = g
    assert np.unique(to_G).size == G.size
    lift = {int(to_G[q]): proj.lift(q) for q in range(proj.quotient_order)}
    edges = set()
    for x, y in itertools.combinations(range(G.size), 2):
        if element_commutator(rep, lift[x], lift[y]).point == 0:
            edges.add((x, y))
    return edges


def oracle_edges(o, G) -> set[tuple[int, int]]:
    out = set()
    for x in range(G.size):
        ys = np.arange(x + 1, G.size)
        out |= {(x, int(y)) for y in ys[o.row(x, ys)]}
    return out


def test_abelian_examples():
    o = abelian_oracle(3, (1, 1))
    G = o.G
    assert not o(G.element(1, 0), G.element(0, 1))
    assert o(G.element(1, 1), G.element(2, 2))
    o2 = abelian_oracle(3, (2, 2))
    H = [o2.G.element(3 * a, 3 * b) for a in range(3) for b in range(3)]
    assert all(o2(x, y) for x, y in itertools.combinations(H, 2))


@pytest.mark.parametrize("spec", [AbelianP(2, (1, 1)), AbelianP(3, (1, 1)), AbelianP(2, (2, 1)),
                                  AbelianP(2, (1, 1, 1)), Dihedral(8), Heisenberg(3, 1), Symmetric(4)])
def test_default_oracle_matches_brute_force(spec):
    G = build_group(spec)
    assert oracle_edges(default_oracle(G), G) == brute_force_deep(spec)


def test_dihedral_examples():
    o = dihedral_oracle(6)
    G = o.G
    a, b = G.rotation(1), G.reflection(0)
    assert o(a, G.rotation(2))
    assert not o(b, G.reflection(3))
    o3 = dihedral_oracle(3)
    assert not o3(o3.G.reflection(0), o3.G.reflection(1))


def test_quaternion_examples():
    o = quaternion_oracle(2)
    G = o.G
    i, j, minus = G.element(0, 1), G.element(1, 0), G.element(0, 2)
    assert o(i, minus) and not o(i, j) and o(i, G.element(0, 3))


def test_spin_lift_examples():
    assert spin_lift("()", 4).terms == {0: 1}
    t = spin_lift("(12)")
    assert t.terms == {0b001: 1, 0b010: -1} and t.scale == 1
    u = spin_lift("(12)(34)")
    sq = u * u
    assert sq.is_scalar() and sq.terms[0] < 0


def test_spin_commute_examples():
    assert not spin_commute("(12)", "(34)")
    assert spin_commute("(123)", "(456)")
    assert not spin_commute("(12)(34)", "(13)(24)")


def test_spin_cap():
    with pytest.raises(CapExceeded):
        spin_lift(tuple(range(40)))


def test_engine_examples():
    H = build_group(Heisenberg(3, 1))
    o = EngineOracle(H)
    assert not o(H.element(1, 0, 0), H.element(0, 0, 1))
    H2 = build_group(Heisenberg(3, 2))
    o2 = EngineOracle(H2)
    assert o2(H2.element(3, 3, 0), H2.element(0, 0, 3))


@pytest.mark.slow
def test_engine_alternating_seven():
    G = build_group(Alternating(7))
    o = EngineOracle(G)
    assert not o("(123)", "(456)")


def test_engine_rejects_self_cover():
    with pytest.raises(Unsupported):
        EngineOracle(build_group(Quaternion(8)))


def test_coprime_product_examples():
    G = build_group(Cyclic(6))
    o = coprime_product_oracle(G)
    assert all(o(x, y) for x, y in itertools.combinations(range(6), 2))
    spec = Abelian((AbelianP(2, (1,)), AbelianP(3, (1, 1))))
    G = build_group(spec)
    o = coprime_product_oracle(G)
    # coordinates: (C2 part, C3 x C3 part)
    el = {lab: i for i, lab in enumerate(G.labels)}
    assert not o(el["(e, x1)"], el["(x, x2)"])
    assert o(el["(e, x1)"], el["(x, x1^2)"])


def test_cross_validate_examples():
    G = build_group(AbelianP(3, (1, 1)))
    assert cross_validate(abelian_oracle(3, (1, 1)), EngineOracle(G), G) == []
    S5 = build_group(Symmetric(5))
    assert cross_validate(spin_oracle(5), EngineOracle(S5), S5) == []
    D12 = build_group(Dihedral(12))
    assert cross_validate(dihedral_oracle(6), EngineOracle(D12), D12) == []


def test_oracle_is_symmetric_and_irreflexive():
    G = build_group(Symmetric(5))
    o = default_oracle(G)
    rng = np.random.default_rng(3)
    for x, y in rng.integers(0, G.size, (200, 2)):
        assert o(int(x), int(y)) == o(int(y), int(x))
    assert not o(5, 5)
