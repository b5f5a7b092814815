"""Subgroups of Z^k in Hermite normal form.

For the free commutative monoid N^k the normal submonoids correspond to
subgroups H of its group completion Z^k via H -> N^k & H.  Everything here
uses Python ints, since HNF intermediates grow quickly.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import BadParameters, DimensionMismatch, InternalError, NegativeGenerator

IntVector = tuple  # of int


@dataclass(frozen=True)
class IntSubgroup:
    dim: int
    basis: tuple  # rows in HNF, tuple of tuples

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        return membership(self, v)

    def to_json(self) -> dict:
        return {"dim": self.dim, "hnf": [list(r) for r in self.basis]}


def _check_rows(rows, dim: int) -> list[list[int]]:
    out = []
    for r in rows:
        r = [int(v) for v in r]
        if len(r) != dim:
            raise DimensionMismatch(f"row of length {len(r)} in dimension {dim}", row=r)
        out.append(r)
    return out


def hnf(rows: Iterable[Sequence[int]], dim: int) -> IntSubgroup:
    """Row Hermite normal form: positive pivots, entries above a pivot reduced into [0, pivot)."""
    A = [r for r in _check_rows(rows, dim) if any(r)]
    r = 0
    for c in range(dim):
        if r == len(A):
            break
        # gcd-combine every row below r into row r on column c
        for i in range(r + 1, len(A)):
            a, b = A[r][c], A[i][c]
            if b == 0:
                continue
            g, s, t = _xgcd(a, b)
            ua, ub = a // g, b // g
            Ar, Ai = A[r], A[i]
            A[r] = [s * x + t * y for x, y in zip(Ar, Ai)]
            A[i] = [ua * y - ub * x for x, y in zip(Ar, Ai)]
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
        p = A[r][c]
        for i in range(r):
            q = A[i][c] // p
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
        r += 1
    basis = tuple(tuple(row) for row in A[:r])
    return IntSubgroup(dim, basis)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, s, t with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _pivot(row) -> int:
    return next(i for i, x in enumerate(row) if x)


def membership(H: IntSubgroup, v: Sequence[int]) -> bool:
    v = [int(x) for x in v]
    if len(v) != H.dim:
        raise DimensionMismatch(f"vector of length {len(v)} in dimension {H.dim}")
    for row in H.basis:
        p = _pivot(row)
        if any(v[:p]):
            return False
        q, rem = divmod(v[p], row[p])
        if rem:
            return False
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


def contains(H1: IntSubgroup, H2: IntSubgroup) -> bool:
    """H2 <= H1."""
    if H1.dim != H2.dim:
        raise DimensionMismatch("subgroups live in different dimensions")
    return all(membership(H1, r) for r in H2.basis)


def join(H1: IntSubgroup, H2: IntSubgroup) -> IntSubgroup:
    if H1.dim != H2.dim:
        raise DimensionMismatch("subgroups live in different dimensions")
    return hnf(H1.basis + H2.basis, H1.dim)


def meet(H1: IntSubgroup, H2: IntSubgroup) -> IntSubgroup:
    if H1.dim != H2.dim:
        raise DimensionMismatch("subgroups live in different dimensions")
    k = H1.dim
    # rows [b, b] and [b', 0]: combinations vanishing on the left half are x*B1 = -y*B2
    stacked = [list(r) + list(r) for r in H1.basis] + [list(r) + [0] * k for r in H2.basis]
    big = hnf(stacked, 2 * k)
    rows = [row[k:] for row in big.basis if not any(row[:k])]
    return hnf(rows, k)


def join_meet(H1: IntSubgroup, H2: IntSubgroup) -> tuple[IntSubgroup, IntSubgroup]:
    return join(H1, H2), meet(H1, H2)


def trivial(dim: int) -> IntSubgroup:
    return IntSubgroup(dim, ())


def ncl_free_commutative(k: int, generators: Iterable[Sequence[int]]) -> IntSubgroup:
    """Subgroup of Z^k whose trace on N^k is the normal closure of the generators."""
    gens = _check_rows(generators, k)
    for g in gens:
        if any(x < 0 for x in g):
            raise NegativeGenerator("generators of N^k must be non-negative", generator=g)
    return hnf(gens, k)


def in_normal_closure(H: IntSubgroup, v: Sequence[int]) -> bool:
    """Membership of v in N^k & H."""
    return all(int(x) >= 0 for x in v) and membership(H, v)


# ---------------------------------------------------------------- N_+


def _nplus_relation(m: int, n: int, B: int):
    i = np.arange(B + 1)
    I, J = np.meshgrid(i, i, indexing="ij")
    return (I == J) | ((I >= m) & (J >= m) & ((I - J) % n == 0))


@dataclass
class NplusReport:
    m: int
    n: int
    bound: int
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "bound": self.bound, "checks": self.checks, "passed": self.passed}


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def nplus_congruence_check(m: int, n: int, B: int) -> NplusReport:
    """Check R_{m,n} on {0..B} and against Cong of the cyclic monoid of index m, period n."""
    from .builders import cyclic_monoid
    from .congruences import Congruence, enumerate_congruences, is_unital

    if m < 0 or n < 1 or B < m + 2 * n:
        raise BadParameters("need m >= 0, n >= 1 and B >= m + 2n", m=m, n=n, bound=B)
    R = _nplus_relation(m, n, B)
    Ri = R.astype(np.int64)
    checks = {
        "reflexive": bool(R.diagonal().all()),
        "symmetric": bool((R == R.T).all()),
        "transitive": bool(not (((Ri @ Ri) > 0) & ~R).any()),
    }
    compatible = True
    for s in range(B + 1):
        # (i, j) in R and i + s, j + s <= B
        top = B + 1 - s
        if not (~R[:top, :top] | R[s:, s:]).all():
            compatible = False
            break
    checks["add_compatible"] = compatible
    identity_singleton = not R[0, 1:].any()
    checks["unital_iff_m_positive"] = identity_singleton == (m > 0)
    # among unital ones, only period 1 collapses a single ideal
    checks["rees_iff_period_one"] = m == 0 or _is_rees(R) == (n == 1)

    C = cyclic_monoid(m, n)
    size = m + n
    expected = set()
    for m2 in range(m + 1):
        for d in _divisors(n):
            expected.add(Congruence(C, _relation_labels(_nplus_relation(m2, d, size - 1))))
    found = set(enumerate_congruences(C, bound=max(size, 1)))
    checks["cyclic_lattice_matches"] = found == expected
    checks["cyclic_lattice_count"] = len(found) == (m + 1) * len(_divisors(n))
    # the image of R_{m2,d} stays unital iff m2 > 0, unless it is already
    # absorbed by R_{m,n} (only m = 0, d = n, where it becomes equality)
    unital_ok = all(
        is_unital(Congruence(C, _relation_labels(_nplus_relation(m2, d, size - 1))))
        == (m2 > 0 or (m == 0 and d == n))
        for m2 in range(m + 1) for d in _divisors(n)
    )
    checks["cyclic_unital_iff_m_positive"] = unital_ok
    return NplusReport(m, n, B, checks)


def _relation_labels(R) -> list[int]:
    return [int(row.argmax()) for row in R]


def _is_rees(R) -> bool:
    """All non-singleton classes of R form one block."""
    big = R.sum(axis=1) > 1
    idx = np.flatnonzero(big)
    return bool(idx.size > 0 and R[np.ix_(idx, idx)].all())


# ---------------------------------------------------------- modularity


@dataclass
class ModularityReport:
    dim: int
    trials: int
    seed: int
    passed: int = 0

    def to_json(self) -> dict:
        return {"dim": self.dim, "trials": self.trials, "seed": self.seed, "passed": self.passed,
                "all_passed": self.passed == self.trials}


def _random_subgroup(rng: random.Random, k: int, max_gens: int = 3, span: int = 12) -> IntSubgroup:
    gens = [[rng.randint(-span, span) for _ in range(k)] for _ in range(rng.randint(0, max_gens))]
    return hnf(gens, k)


def modularity_subgroups(k: int, trials: int, seed: int = 0) -> ModularityReport:
    """Random H1 <= H3 (H3 = H1 v H') and H2; any failure of the modular law raises."""
    if k < 1:
        raise BadParameters("dimension must be at least 1", k=k)
    rng = random.Random(seed)
    report = ModularityReport(k, trials, seed)
    for t in range(trials):
        H1 = _random_subgroup(rng, k)
        H2 = _random_subgroup(rng, k)
        H3 = join(H1, _random_subgroup(rng, k))
        lhs = join(H1, meet(H2, H3))
        rhs = meet(join(H1, H2), H3)
        if lhs != rhs:
            raise InternalError(
                "modular law failed", trial=t,
                H1=[list(r) for r in H1.basis], H2=[list(r) for r in H2.basis], H3=[list(r) for r in H3.basis],
            )
        report.passed += 1
    return report


def gcd_of(values: Iterable[int]) -> int:
    return reduce(math.gcd, values, 0)
