import itertools

import numpy as np
import pytest

from deepcommuting.catalog import covers
from deepcommuting.catalog.groups import build_group, pair_generates_cyclic, power_adjacent
from deepcommuting.catalog.specs import (
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
    parse_spec,
    spec_order,
)
from deepcommuting.errors import InvalidParams, InvalidSpec, NotCoprime, Unsupported

SMALL = ["cyc:6", "abelianp:2:2,1", "dih:12", "dih:10", "quat:12", "heis:3:1", "sym:4", "alt:5",
         "prod(dih:8;cyc:9)", "abelian(abelianp:2:1;abelianp:3:1,1)"]


@pytest.mark.parametrize("text", SMALL)
def test_spec_round_trip(text):
    assert format_spec(parse_spec(text)) == text


@pytest.mark.parametrize("text", ["", "cyc", "cyc:0", "dih:7", "quat:6", "heis:4:1", "sym:1",
                                  "abelianp:2:1,2", "prod(cyc:2;cyc:4)", "prod(cyc:2", "foo:3"])
def test_invalid_specs(text):
    with pytest.raises(InvalidSpec):
        parse_spec(text)


def test_non_coprime_product():
    with pytest.raises(NotCoprime):
        parse_spec("prod(cyc:2;dih:6)")


def test_orders():
    assert build_group(Cyclic(6)).size == 6
    assert build_group(Heisenberg(3, 1)).size == 27
    assert build_group(CoprimeProduct((AbelianP(2, (1, 1)), Cyclic(3)))).size == 12
    assert spec_order(Alternating(8)) == 20160


@pytest.mark.parametrize("text", SMALL)
def test_group_axioms(text):
    G = build_group(parse_spec(text))
    n = G.size
    x = np.arange(n)
    assert np.array_equal(G.mul(0, x), x) and np.array_equal(G.mul(x, 0), x)
    assert np.all(G.mul(x, G.inv(x)) == 0)
    rng = np.random.default_rng(1)
    a, b, c = rng.integers(0, n, (3, 200))
    assert np.array_equal(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c)))
    # Latin square on the sampled rows
    for i in a[:10]:
        assert np.unique(G.mul(np.full(n, i), x)).size == n


def test_orders_match_brute_force():
    G = build_group(Dihedral(12))
    for g in range(G.size):
        k, y = 1, g
        while y != 0:
            y, k = G.mul1(y, g), k + 1
        assert G.order(g) == k


def test_quaternion_relations():
    G = build_group(Quaternion(8))
    a, b = G.generators
    assert G.order(a) == 4 and G.power(b, 2) == G.power(a, 2)
    assert int(G.mul1(G.mul1(G.inv(b), a), b)) == int(G.inv(a))


def test_pair_generates_cyclic():
    S5 = build_group(Symmetric(5))
    x, y = S5.index("(123)"), S5.index("(45)")
    assert pair_generates_cyclic(S5, x, x)
    assert pair_generates_cyclic(S5, x, y)
    G = build_group(AbelianP(3, (1, 1)))
    assert not pair_generates_cyclic(G, G.element(1, 0), G.element(0, 1))


def test_power_adjacent():
    C5 = build_group(Cyclic(5))
    assert power_adjacent(C5, 1, 2)
    S3 = build_group(Symmetric(3))
    assert not power_adjacent(S3, S3.index("(12)"), S3.index("(123)"))
    assert all(power_adjacent(S3, g, 0) for g in range(1, 6))


def test_metacyclic_formula():
    for n in range(2, 51):
        assert covers.metacyclic_multiplier_order(covers.quaternion_params(n)) == 1
        if n >= 3:
            assert covers.metacyclic_multiplier_order(covers.dihedral_params(n)) == (2 if n % 2 == 0 else 1)


def test_metacyclic_bad_params():
    with pytest.raises(InvalidParams):
        covers.metacyclic_multiplier_order(covers.MetacyclicParams(8, 2, 3, 7))  # t does not divide m
    with pytest.raises(InvalidParams):
        covers.metacyclic_multiplier_order(covers.MetacyclicParams(7, 2, 7, 2))  # r^s != 1 mod m


def test_cover_presentations():
    assert isinstance(covers.schur_cover_presentation(Quaternion(8)), covers.SelfCover)
    p = covers.schur_cover_presentation(AbelianP(3, (1, 1)))
    assert p.generator_names == ("x1", "x2", "a12") and p.kernel_generators == (2,)
    d = covers.schur_cover_presentation(Dihedral(12))
    assert d.generator_count == 3 and len(d.kernel_generators) == 1
    with pytest.raises(Unsupported):
        covers.schur_cover_presentation(Alternating(8))


@pytest.mark.parametrize("spec", [AbelianP(2, (2, 1)), Dihedral(12), Heisenberg(3, 1), Symmetric(5),
                                  Alternating(6)])
def test_projection_images_satisfy_relators(spec):
    G = build_group(spec)
    p = covers.schur_cover_presentation(spec)
    covers.check_projection(G, p, covers.projection_images(spec, G, p))


def test_coprime_split():
    spec = Abelian((AbelianP(2, (1,)), AbelianP(3, (2, 1))))
    assert [s for s, _ in covers.coprime_split(spec)] == [AbelianP(2, (1,)), AbelianP(3, (2, 1))]
    assert [s for s, _ in covers.coprime_split(Cyclic(6))] == [Cyclic(2), Cyclic(3)]
    assert [s for s, _ in covers.coprime_split(Symmetric(5))] == [Symmetric(5)]


def test_coprime_split_coordinates_are_a_bijection():
    spec = parse_spec("prod(dih:8;cyc:9)")
    G = build_group(spec)
    parts = covers.coprime_split(spec)
    coords = list(zip(*(m for _, m in parts)))
    assert len(set(coords)) == G.size
    # the coordinate map is a homomorphism
    for (s, m) in parts:
        H = build_group(s)
        for a, b in itertools.product(range(0, G.size, 7), range(0, G.size, 5)):
            assert m[G.mul1(a, b)] == H.mul1(m[a], m[b])
