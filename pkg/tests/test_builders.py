from __future__ import annotations

import random
from math import factorial

import numpy as np
import pytest

from normcong.builders import (
    Transformation,
    TransformationCodec,
    bicyclic_bounded_check,
    bicyclic_product,
    boolean_monoid,
    cyclic_monoid,
    distinguished_subsets,
    enumerate_monoids,
    full_transformation_monoid,
    monoid_from_spec,
    nmax_truncated,
    random_monoid,
    rank_ideal,
    sign_monoid,
    small_groups,
)
from normcong.errors import BadParameters, BoundExceeded, KleinFourUndefined
from normcong.monoid import find_isomorphism, from_table, is_group, is_ideal, units


def test_composition_convention():
    f = Transformation((2, 2, 3))
    g = Transformation((3, 1, 1))
    # apply g first
    assert f.compose(g).images == (3, 2, 2)
    M, codec = full_transformation_monoid(3)
    assert M.mul(codec.encode(f), codec.encode(g)) == codec.encode(f.compose(g))


def test_codec_roundtrip_and_identity():
    codec = TransformationCodec(4)
    for i in (0, 17, 255):
        assert codec.encode(codec.decode(i)) == i
    assert codec.decode(codec.identity).images == (1, 2, 3, 4)
    with pytest.raises(BadParameters):
        codec.decode(256)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_tn_sizes_and_units(n):
    M, codec = full_transformation_monoid(n)
    assert M.size == n ** n
    assert len(units(M)) == factorial(n)
    assert codec.decode(M.identity).images == tuple(range(1, n + 1))


def test_tn_bound():
    with pytest.raises(BoundExceeded):
        full_transformation_monoid(6)


def test_distinguished_subsets():
    d3 = distinguished_subsets(3)
    assert len(d3.symmetric) == 6 and len(d3.alternating) == 3
    with pytest.raises(KleinFourUndefined):
        d3.klein_four
    d4 = distinguished_subsets(4)
    assert len(d4.klein_four) == 4 and set(d4.klein_four) <= set(d4.alternating)


def test_rank_ideals():
    M, _ = full_transformation_monoid(3)
    assert len(rank_ideal(3, 1)) == 3
    assert len(rank_ideal(3, 2)) == 21
    assert is_ideal(M, rank_ideal(3, 2))
    with pytest.raises(BadParameters):
        rank_ideal(3, 0)


def test_cyclic_monoid_table():
    C = cyclic_monoid(2, 3)
    # a^5 = a^2
    a = 1
    x = 0
    for _ in range(5):
        x = C.mul(x, a)
    assert x == 2
    with pytest.raises(BadParameters):
        cyclic_monoid(1, 0)


def test_small_monoids():
    N = nmax_truncated(3)
    assert N.mul(1, 3) == 3 and N.identity == 0
    assert boolean_monoid().size == 2 and sign_monoid().size == 3
    assert sign_monoid().mul(1, 1) == 0


def test_small_groups_are_groups():
    groups = small_groups(8)
    assert len(groups) == 14
    for name, G in groups.items():
        assert is_group(G), name
    assert find_isomorphism(groups["S3"], groups["Z6"]) is None


def test_enumerate_monoids_counts():
    # monoids up to isomorphism of orders 1..4
    assert [len(enumerate_monoids(n)) for n in (1, 2, 3, 4)] == [1, 2, 7, 35]


def test_random_monoids_are_valid():
    rng = random.Random(3)
    for _ in range(30):
        M = random_monoid(rng, 6)
        assert 1 <= M.size <= 6
        from_table(M.table, M.identity, validation="full")


def test_monoid_from_spec():
    assert monoid_from_spec("tn", "2").size == 4
    assert monoid_from_spec("group", "Q8").size == 8
    with pytest.raises(BadParameters):
        monoid_from_spec("nope")


def test_bicyclic():
    assert bicyclic_product((0, 1), (1, 0)) == (0, 0)
    assert bicyclic_product((1, 0), (0, 1)) == (1, 1)
    report = bicyclic_bounded_check(4)
    assert report.passed
    assert report.commutative_on_range is False
