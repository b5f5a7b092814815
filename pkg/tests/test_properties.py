from __future__ import annotations

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from normcong.builders import random_monoid
from normcong.congruences import enumerate_congruences, identity_class, induced_congruence
from normcong.lattice import build_lattice, subset_lattice
from normcong.monoid import groupal_closure
from normcong.normality import (
    enumerate_normal_submonoids,
    is_normal_monoid,
    is_normal_submonoid,
    normal_closure,
    stability_set,
)

monoids = st.randoms(use_true_random=False).map(lambda r: (random_monoid(r, 6), r))
SETTINGS = settings(max_examples=40, deadline=None)


def subset(rnd, n, p=0.4):
    return {x for x in range(n) if rnd.random() < p}


@SETTINGS
@given(monoids)
def test_stability_is_monotone(mr):
    M, r = mr
    A = subset(r, M.size) or {M.identity}
    B = A | subset(r, M.size)
    assert set(stability_set(M, A)) <= set(stability_set(M, B))


@SETTINGS
@given(monoids)
def test_normal_closure_is_a_closure_operator(mr):
    M, r = mr
    A, B = subset(r, M.size), subset(r, M.size)
    cA, cB = normal_closure(M, A), normal_closure(M, B)
    assert A <= set(cA)
    assert normal_closure(M, cA) == cA
    assert set(cA) <= set(normal_closure(M, A | B))
    assert normal_closure(M, A | B) == normal_closure(M, set(cA) | set(cB))
    assert is_normal_submonoid(M, cA)


@SETTINGS
@given(monoids)
def test_norsub_closed_under_intersection(mr):
    M, _ = mr
    family = enumerate_normal_submonoids(M)
    fs = set(family)
    for S in family:
        for T in family:
            assert tuple(sorted(set(S) & set(T))) in fs


@SETTINGS
@given(monoids)
def test_finite_monoids_are_normal(mr):
    assert is_normal_monoid(mr[0])


@SETTINGS
@given(monoids)
def test_identity_class_of_induced_is_normal_closure(mr):
    M, r = mr
    A = subset(r, M.size)
    R = induced_congruence(M, A)
    assert identity_class(R) == normal_closure(M, A)
    assert R == induced_congruence(M, normal_closure(M, A))


@SETTINGS
@given(monoids)
def test_cong_containing_a_depends_on_groupal_closure(mr):
    M, r = mr
    A = subset(r, M.size)
    G = groupal_closure(M, A)
    for R in enumerate_congruences(M):
        has_a = all(R.related(M.identity, a) for a in A)
        has_g = all(R.related(M.identity, g) for g in G)
        assert has_a == has_g


@SETTINGS
@given(monoids)
def test_phi_join_and_psi_meet(mr):
    M, _ = mr
    family = enumerate_normal_submonoids(M)
    ind = {S: induced_congruence(M, S) for S in family}
    for S in family:
        assert identity_class(ind[S]) == S
        for T in family:
            assert ind[normal_closure(M, set(S) | set(T))] == ind[S].join(ind[T])
    congs = enumerate_congruences(M)
    for R in congs:
        assert is_normal_submonoid(M, identity_class(R))
        for Q in congs:
            assert set(identity_class(R.meet(Q))) == set(identity_class(R)) & set(identity_class(Q))


@SETTINGS
@given(monoids)
def test_lattices_validate_and_hasse_reconstructs_order(mr):
    M, _ = mr
    for L in (subset_lattice(enumerate_normal_submonoids(M)),
              build_lattice(enumerate_congruences(M), lambda a, b: a.refines(b))):
        L.validate()
        n = len(L)
        reach = np.eye(n, dtype=bool)
        for i, j in L.covers():
            reach[i, j] = True
        for _ in range(n):
            reach = reach | ((reach.astype(int) @ reach.astype(int)) > 0)
        assert np.array_equal(reach, L.leq)
