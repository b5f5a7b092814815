from __future__ import annotations

import json

import numpy as np
import pytest

from normcong.builders import cyclic_group, cyclic_monoid, small_groups, full_transformation_monoid
from normcong.errors import (
    BoundExceeded,
    IdentityViolation,
    MalformedTable,
    NotAssociative,
    SizeOverflow,
)
from normcong.monoid import (
    direct_product,
    find_isomorphism,
    from_json,
    from_table,
    groupal_closure,
    inverse_map,
    is_group,
    is_groupal,
    is_ideal,
    is_submonoid,
    submonoid_generated,
    to_json,
    units,
)


def test_from_table_accepts_boolean_monoid():
    M = from_table([[0, 1], [1, 1]], 0)
    assert M.size == 2 and M.identity == 0 and M.validated


@pytest.mark.parametrize("table, identity", [
    ([[0, 1], [1]], 0),
    ([[0, 2], [1, 1]], 0),
    ([[0, 1], [1, 1]], 5),
    ([], 0),
])
def test_malformed_tables(table, identity):
    with pytest.raises(MalformedTable):
        from_table(table, identity)


def test_identity_violation_reports_element():
    with pytest.raises(IdentityViolation) as err:
        from_table([[0, 0], [1, 1]], 0)
    assert err.value.details["x"] == 1


def test_non_associative_witness_is_real():
    # left-zero on {1,2} but with 1*1 = 2 breaks associativity
    t = [[0, 1, 2], [1, 2, 1], [2, 2, 2]]
    with pytest.raises(NotAssociative) as err:
        from_table(t, 0)
    x, y, z = (err.value.details[k] for k in "xyz")
    assert t[t[x][y]][z] != t[x][t[y][z]]


def test_light_test_catches_large_defect():
    base = np.add.outer(np.arange(300), np.arange(300)) % 300
    base[5, 7] = 3
    with pytest.raises(NotAssociative):
        from_table(base, 0, validation="full")


def test_spot_validation_flags_result():
    M = from_table(cyclic_group(50).table, 0, validation="spot")
    assert not M.validated


def test_units_and_inverses():
    M, codec = full_transformation_monoid(3)
    U = units(M)
    assert len(U) == 6
    inv = inverse_map(M)
    assert all(M.mul(u, inv[u]) == M.identity for u in U)
    assert units(cyclic_monoid(2, 3)) == (0,)


def test_closures():
    M = cyclic_group(6)
    assert submonoid_generated(M, [2]) == (0, 2, 4)
    assert submonoid_generated(M, []) == (0,)
    N = cyclic_monoid(1, 2)
    assert submonoid_generated(N, [1]) == (0, 1, 2)
    assert is_submonoid(M, [0, 3]) and not is_submonoid(M, [0, 1])
    assert groupal_closure(M, [2]) == (0, 2, 4)
    assert is_groupal(N, [0, 1, 2])


def test_ideals():
    N = cyclic_monoid(2, 1)  # {1, a, a^2 = zero}
    assert is_ideal(N, [2]) and is_ideal(N, [1, 2]) and not is_ideal(N, [1])
    assert is_group(cyclic_group(4)) and not is_group(N)


def test_direct_product_and_overflow():
    P = direct_product(cyclic_group(2), cyclic_group(3))
    assert P.size == 6 and is_group(P)
    assert find_isomorphism(P, cyclic_group(6)) is not None
    with pytest.raises(SizeOverflow):
        direct_product(cyclic_group(100), cyclic_group(100), bound=5000)


def test_isomorphism_search():
    g = small_groups(8)
    assert find_isomorphism(g["Z4"], g["Z2xZ2"]) is None
    assert find_isomorphism(g["D4"], g["Q8"]) is None
    rng = np.random.default_rng(0)
    perm = rng.permutation(8)
    inv = np.argsort(perm)
    t = g["Q8"].table
    relabel = perm[t[np.ix_(inv, inv)]]
    Q = from_table(relabel, int(perm[0]))
    phi = find_isomorphism(g["Q8"], Q)
    assert phi is not None and phi.is_homomorphism() and phi.is_bijective()
    with pytest.raises(BoundExceeded):
        find_isomorphism(cyclic_group(13), cyclic_group(13))


def test_json_roundtrip():
    M, _ = full_transformation_monoid(2)
    data = json.dumps(to_json(M))
    N = from_json(data)
    assert np.array_equal(N.table, M.table) and N.identity == M.identity and N.labels == M.labels
    with pytest.raises(MalformedTable):
        from_json({"table": [[0]]})
