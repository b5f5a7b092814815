from __future__ import annotations

import random
from itertools import combinations

import numpy as np
import pytest

import oracles
from normcong.builders import (
    boolean_monoid,
    cyclic_group,
    cyclic_monoid,
    distinguished_subsets,
    full_transformation_monoid,
    monoid_catalog,
    nmax_truncated,
    random_monoid,
    rank_ideal,
    sign_monoid,
    small_groups,
)
from normcong.congruences import (
    Congruence,
    classify_congruence,
    commutative_pair_oracle,
    congruence_closure,
    deformation_classes,
    deformation_reachable,
    enumerate_congruences,
    identity_class,
    identity_congruence,
    induced_congruence,
    is_congruentially_simple,
    is_unital,
    malcev_chain,
    malcev_congruence,
    quotient,
    rees_congruence,
    unital_transfer,
    units_restriction_is_identity,
    universal_congruence,
    verify_blowup,
)
from normcong.errors import (
    BoundExceeded,
    FiberMismatch,
    NotCommutative,
    NotIdeal,
    NotNormalSubgroup,
    NotSubsemigroup,
    NotUnital,
    RankOutOfRange,
)
from normcong.monoid import find_isomorphism
from normcong.normality import enumerate_normal_submonoids, normal_closure


def test_closure_examples(t2):
    M, codec = t2
    assert congruence_closure(M, []) == identity_congruence(M)
    c1, c2 = codec.encode((1, 1)), codec.encode((2, 2))
    R = congruence_closure(M, [(c1, c2)])
    assert R.num_classes == 3 and R.related(c1, c2)
    Z4 = cyclic_group(4)
    assert congruence_closure(Z4, [(0, 2)]).classes() == ((0, 2), (1, 3))


def test_closure_methods_agree(t3):
    M, _ = t3
    rng = random.Random(5)
    for _ in range(60):
        pairs = [(rng.randrange(27), rng.randrange(27)) for _ in range(rng.randint(0, 3))]
        assert congruence_closure(M, pairs, "worklist") == congruence_closure(M, pairs, "rounds")


def test_closure_matches_intersection_oracle():
    rng = random.Random(9)
    for _ in range(25):
        M = random_monoid(rng, 5)
        pairs = [(rng.randrange(M.size), rng.randrange(M.size)) for _ in range(2)]
        assert congruence_closure(M, pairs).class_of == oracles.least_congruence_containing(M, pairs)


def test_induced_examples(t3):
    M, _ = t3
    d = distinguished_subsets(3)
    assert induced_congruence(M, [M.identity]) == identity_congruence(M)
    RS = induced_congruence(M, d.symmetric)
    assert RS.num_classes == 2 and identity_class(RS) == d.symmetric
    RA = induced_congruence(M, d.alternating)
    assert RA.num_classes == 3
    odd = set(d.symmetric) - set(d.alternating)
    assert set(RA.classes()) == {d.alternating, tuple(sorted(odd)), tuple(sorted(set(range(27)) - set(d.symmetric)))}


def test_deformation_oracle(t3):
    M, codec = t3
    d = distinguished_subsets(3)
    c1 = codec.encode((1, 1, 1))
    assert not deformation_reachable(M, d.symmetric, c1, M.identity)
    assert deformation_reachable(M, d.symmetric, 3, 3)
    for A in (d.alternating, d.symmetric, [c1], rank_ideal(3, 2)[:4]):
        assert Congruence(M, deformation_classes(M, A)) == induced_congruence(M, A)


def test_deformation_agrees_on_catalog():
    for M in monoid_catalog(4):
        for r in range(M.size + 1):
            for A in combinations(range(M.size), r):
                R = induced_congruence(M, A)
                assert Congruence(M, deformation_classes(M, A)) == R
                assert Congruence(M, deformation_classes(M, A)).class_of == oracles.deformation_partition(M, A)


def test_identity_class_examples(t4):
    M, _ = t4
    A4 = distinguished_subsets(4).alternating
    assert identity_class(induced_congruence(M, A4)) == A4
    assert identity_class(identity_congruence(M)) == (M.identity,)
    assert identity_class(rees_congruence(M, rank_ideal(4, 2))) == (M.identity,)


def test_unital(t3):
    M, _ = t3
    assert is_unital(identity_congruence(M))
    assert is_unital(rees_congruence(M, rank_ideal(3, 2)))
    assert not is_unital(induced_congruence(M, distinguished_subsets(3).symmetric))


def test_units_restriction_is_weaker_than_unital():
    # the boolean monoid has a single unit, so every relation restricts to equality on it
    B = boolean_monoid()
    nabla = universal_congruence(B)
    assert units_restriction_is_identity(nabla)
    assert not is_unital(nabla)


def test_rees(t2, t3):
    M2, _ = t2
    M3, _ = t3
    assert rees_congruence(M3, range(27)).num_classes == 1
    assert rees_congruence(M2, rank_ideal(2, 1)).num_classes == 3
    assert rees_congruence(M3, rank_ideal(3, 2)).num_classes == 7
    with pytest.raises(NotIdeal):
        rees_congruence(M3, [M3.identity])


def test_quotients(t3):
    M, _ = t3
    Q, proj = quotient(M, identity_congruence(M))
    assert np.array_equal(Q.table, M.table) and proj.is_homomorphism()
    d = distinguished_subsets(3)
    QS, p = quotient(M, induced_congruence(M, d.symmetric))
    assert p.is_homomorphism()
    assert find_isomorphism(QS, boolean_monoid()) is not None
    QA, _ = quotient(M, induced_congruence(M, d.alternating))
    assert find_isomorphism(QA, sign_monoid()) is not None


def test_enumeration_examples(t2, t3):
    assert enumerate_congruences(cyclic_group(1)) == [identity_congruence(cyclic_group(1))]
    C2 = enumerate_congruences(t2[0])
    assert [R.num_classes for R in C2] == [4, 3, 2, 1]
    C3 = enumerate_congruences(t3[0])
    assert len(C3) == 7 and all(a.refines(b) for a, b in zip(C3, C3[1:]))
    with pytest.raises(BoundExceeded):
        enumerate_congruences(t3[0], bound=10)


def test_classification(t3):
    M, codec = t3
    c = classify_congruence(M, identity_congruence(M))
    assert c.kind == "normal" and c.anchor == (M.identity,)
    c = classify_congruence(M, rees_congruence(M, rank_ideal(3, 1)))
    assert c.kind == "exceptional" and c.anchor == (M.identity,)
    A3 = distinguished_subsets(3).alternating
    c = classify_congruence(M, induced_congruence(M, A3))
    assert c.kind == "normal" and c.anchor == A3


def test_unital_transfer(t3):
    M, _ = t3
    A3 = distinguished_subsets(3).alternating
    tr = unital_transfer(M, A3)
    assert tr.push_down(tr.induced) == identity_congruence(tr.quotient)
    assert tr.lift(identity_congruence(tr.quotient)) == tr.induced
    with pytest.raises(FiberMismatch):
        tr.push_down(identity_congruence(M))
    with pytest.raises(NotUnital):
        tr.lift(universal_congruence(tr.quotient))
    tr1 = unital_transfer(M, [M.identity])
    unital = [R for R in enumerate_congruences(M) if is_unital(R)]
    assert len(unital) == 4
    for R in unital:
        assert tr1.lift(tr1.push_down(R)) == R


def test_blowup_examples(t3):
    r = verify_blowup(cyclic_group(1))
    assert r.passed and r.total == r.fiber_sum == 1
    r = verify_blowup(t3[0])
    assert r.passed and [f["fiber_size"] for f in r.fibers] == [4, 1, 1, 1]
    for name, G in small_groups(8).items():
        r = verify_blowup(G)
        assert r.passed and all(f["fiber_size"] == 1 for f in r.fibers), name


def test_congruential_simplicity(t3):
    assert is_congruentially_simple(t3[0])
    assert is_congruentially_simple(small_groups(8)["D4"])
    # brute-force oracle over the normal quotients gives True
    assert is_congruentially_simple(cyclic_monoid(2, 2)) is True


def test_malcev_examples(t3):
    M, _ = t3
    for n in (2, 3, 4):
        assert malcev_congruence(n, 1, [(1,)]) == identity_congruence(full_transformation_monoid(n)[0])
    assert malcev_congruence(3, 2, [(1, 2)]) == rees_congruence(M, rank_ideal(3, 1))
    assert malcev_congruence(3, 3, [(1, 2, 3)]) == rees_congruence(M, rank_ideal(3, 2))
    assert set(malcev_chain(3)) == set(enumerate_congruences(M))
    with pytest.raises(NotNormalSubgroup):
        malcev_congruence(3, 3, [(1, 2, 3), (2, 1, 3)])
    with pytest.raises(RankOutOfRange):
        malcev_congruence(3, 4, [(1, 2, 3, 4)])


def test_commutative_oracle():
    Z6 = cyclic_group(6)
    assert commutative_pair_oracle(Z6, [0, 3], 1, 4)
    assert commutative_pair_oracle(Z6, [0, 2, 4], 2, 2)
    with pytest.raises(NotCommutative):
        commutative_pair_oracle(full_transformation_monoid(2)[0], [0], 0, 1)
    with pytest.raises(NotSubsemigroup):
        commutative_pair_oracle(Z6, [1], 0, 1)


def test_commutative_oracle_on_nmax6():
    N = nmax_truncated(6)
    for r in range(1, 8):
        for A in combinations(range(7), r):
            if not all(N.mul(a, b) in A for a in A for b in A):
                continue
            R = induced_congruence(N, A)
            for x in range(7):
                for y in range(7):
                    assert commutative_pair_oracle(N, A, x, y) == R.related(x, y)


def test_section_and_morphism_laws(t3):
    M, _ = t3
    family = enumerate_normal_submonoids(M)
    induced = {S: induced_congruence(M, S) for S in family}
    for S in family:
        assert identity_class(induced[S]) == S
    for S in family:
        for T in family:
            J = normal_closure(M, set(S) | set(T))
            assert induced[J] == induced[S].join(induced[T])
    congs = enumerate_congruences(M)
    for R in congs:
        for Q in congs:
            assert identity_class(R.meet(Q)) == tuple(sorted(set(identity_class(R)) & set(identity_class(Q))))


def test_every_enumerated_congruence_is_compatible(t3):
    for R in enumerate_congruences(t3[0]):
        assert R.is_compatible()
