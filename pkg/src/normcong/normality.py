"""Stability sets, invariant and normal submonoids, normal closures and the
family NorSub(M) of all normal submonoids.

The normal closure of ``A`` is the union of the increasing chain

    A_0 = <A>',   A_k = < union of x A_{k-1} y over (x, y) in X(A_{k-1}) >'

where ``<.>'`` is the groupal closure and ``X(B)`` the stability set
``{(x, y) : xBy meets B}``.  On a finite monoid the chain stabilises, and
the first repeated term is the closure.
"""
from __future__ import annotations

from typing import Iterable

import numpy as np

from . import bounds
from .errors import (
    BoundExceeded,
    EmptySubset,
    InternalError,
    NotCommutative,
    NotNormalMonoid,
    NotSubmonoid,
)
from .monoid import (
    ElementSet,
    FiniteMonoid,
    _as_set,
    _closure_mask,
    _groupal_mask,
    _mask,
    inverse_map,
    is_groupal,
    is_submonoid,
    submonoid_generated,
    units,
)

PairSet = tuple  # sorted tuple of (x, y) pairs

# below this many members, per-element gathers beat dense matmuls
_GATHER_LIMIT = 48


class _Conjugation:
    """Stability matrix of a subset and the union of its generalized conjugates."""

    def __init__(self, M: FiniteMonoid, mask: np.ndarray):
        self.M = M
        self.mask = mask
        self.members = np.flatnonzero(mask)
        self._membership = None

    def _left_membership(self) -> np.ndarray:
        # Mem[x, u] = 1 iff u is in xA
        if self._membership is None:
            n = self.M.size
            mem = np.zeros((n, n), dtype=np.float32)
            xa = self.M.table[:, self.members]
            mem[np.repeat(np.arange(n), xa.shape[1]), xa.ravel()] = 1.0
            self._membership = mem
        return self._membership

    def stability_matrix(self) -> np.ndarray:
        """``X[x, y]`` iff ``x a y`` lies in A for some a in A."""
        table = self.M.table
        hit = self.mask[table]  # hit[u, y] = u*y in A
        if self.members.size <= _GATHER_LIMIT:
            X = np.zeros_like(hit)
            for a in self.members:
                X |= hit[table[:, a]]
            return X
        return (self._left_membership() @ hit.astype(np.float32)) > 0

    def conjugates_mask(self, X: np.ndarray | None = None) -> np.ndarray:
        """Mask of ``{x a y : (x, y) in X, a in A}``."""
        if X is None:
            X = self.stability_matrix()
        table = self.M.table
        out = np.zeros(self.M.size, dtype=bool)
        if self.members.size <= _GATHER_LIMIT:
            for a in self.members:
                out[table[table[:, a]][X]] = True
            return out
        # reach[u, y]: some x with u in xA has (x, y) in X
        reach = (self._left_membership().T @ X.astype(np.float32)) > 0
        out[table[reach]] = True
        return out


def stability_set(M: FiniteMonoid, A: Iterable[int]) -> PairSet:
    mask = _mask(M, A)
    if not mask.any():
        raise EmptySubset("the stability set needs a non-empty subset")
    X = _Conjugation(M, mask).stability_matrix()
    return tuple(map(tuple, np.argwhere(X).tolist()))


def left_stability_set(M: FiniteMonoid, A: Iterable[int]) -> ElementSet:
    """``{z : (zA) meets A}``, for commutative M."""
    if not M.is_commutative():
        raise NotCommutative("the one-sided stability set is defined for commutative monoids")
    mask = _mask(M, A)
    if not mask.any():
        raise EmptySubset("the stability set needs a non-empty subset")
    hit = mask[M.table[:, np.flatnonzero(mask)]]  # hit[z, i] = z*a_i in A
    return _as_set(hit.any(axis=1))


def is_invariant(M: FiniteMonoid, S: Iterable[int]) -> bool:
    S = list(S)
    if not is_submonoid(M, S):
        raise NotSubmonoid("invariance is only defined for submonoids", subset=sorted(S))
    mask = _mask(M, S)
    conj = _Conjugation(M, mask).conjugates_mask()
    return not (conj & ~mask).any()


def is_normal_submonoid(M: FiniteMonoid, S: Iterable[int]) -> bool:
    S = list(S)
    return is_groupal(M, S) and is_invariant(M, S)


def normal_closure_sequence(M: FiniteMonoid, A: Iterable[int]) -> list[ElementSet]:
    """The chain ``A_0 <= A_1 <= ...`` up to its first repeated term."""
    inv = inverse_map(M)
    full = M.size
    current = _groupal_mask(M, _mask(M, A), inv)
    chain = [_as_set(current)]
    while int(current.sum()) < full:
        if len(chain) > full:
            raise InternalError("normal closure chain failed to stabilise", steps=len(chain))
        grown = _Conjugation(M, current).conjugates_mask()
        nxt = _groupal_mask(M, grown | current, inv)
        if np.array_equal(nxt, current):
            break
        current = nxt
        chain.append(_as_set(current))
    return chain


def normal_closure(M: FiniteMonoid, A: Iterable[int]) -> ElementSet:
    return normal_closure_sequence(M, A)[-1]


def _unit_conjugacy_representatives(M: FiniteMonoid) -> list[int]:
    # ncl(g x g^-1) == ncl(x) for every unit g: (g, g^-1) stabilises any
    # normal submonoid, so each closure only needs one orbit member.
    inv = inverse_map(M)
    table = M.table
    seen = np.zeros(M.size, dtype=bool)
    reps = []
    images = [table[table[g], inv[g]] for g in sorted(inv)]  # x -> g x g^-1
    for x in range(M.size):
        if seen[x]:
            continue
        reps.append(x)
        for img in images:
            seen[img[x]] = True
    return reps


def enumerate_normal_submonoids(M: FiniteMonoid, bound: int | None = None) -> list[ElementSet]:
    """Every normal submonoid of M, sorted by size then members.

    Normal closures of single elements are the atoms; closing them under
    ``S v S' = ncl(S u S')`` yields the whole family, since a normal
    submonoid is the join of the closures of its elements.
    """
    bound = bounds.NORSUB_BOUND if bound is None else bound
    if M.size > bound:
        raise BoundExceeded(
            f"NorSub enumeration is capped at {bound} elements (got {M.size})",
            size=M.size, bound=bound,
        )
    family = {(M.identity,)}
    for x in _unit_conjugacy_representatives(M):
        family.add(normal_closure(M, [x]))
    family_list = list(family)
    done_pairs = set()
    while True:
        new = []
        ordered = sorted(family_list, key=lambda s: (-len(s), s))
        for i, S in enumerate(ordered):
            for T in ordered[i + 1:]:
                if (S, T) in done_pairs:
                    continue
                done_pairs.add((S, T))
                sS, sT = set(S), set(T)
                if sT <= sS or sS <= sT:
                    continue
                J = normal_closure(M, sS | sT)
                if J not in family:
                    family.add(J)
                    new.append(J)
        if not new:
            break
        family_list.extend(new)
    return sorted(family, key=lambda s: (len(s), s))


def is_normal_monoid(M: FiniteMonoid) -> bool:
    return is_normal_submonoid(M, units(M))


def normal_subgroups_of_units(M: FiniteMonoid, bound: int | None = None) -> list[ElementSet]:
    """Subgroups of U(M) closed under conjugation by units."""
    bound = bounds.UNITS_BOUND if bound is None else bound
    inv = inverse_map(M)
    U = sorted(inv)
    if len(U) > bound:
        raise BoundExceeded(
            f"group of units has {len(U)} elements, bound is {bound}", size=len(U), bound=bound,
        )
    rows = M.rows
    atoms = set()
    for g in U:
        conjugates = {rows[rows[h][g]][inv[h]] for h in U}
        atoms.add(submonoid_generated(M, conjugates))
    family = set(atoms) | {(M.identity,)}
    frontier = list(family)
    while frontier:
        new = []
        for S in frontier:
            for T in list(family):
                J = submonoid_generated(M, set(S) | set(T))
                if J not in family:
                    family.add(J)
                    new.append(J)
        frontier = new
    return sorted(family, key=lambda s: (len(s), s))


def is_normally_simple(
    M: FiniteMonoid, bound: int | None = None, units_bound: int | None = None
) -> bool:
    if not is_normal_monoid(M):
        raise NotNormalMonoid("normal simplicity is defined for normal monoids only")
    found = set(enumerate_normal_submonoids(M, bound))
    expected = set(normal_subgroups_of_units(M, units_bound)) | {tuple(range(M.size))}
    return found == expected


def lift_closed(M: FiniteMonoid, mask: np.ndarray) -> np.ndarray:
    """Submonoid closure of a mask (re-exported for callers holding masks)."""
    return _closure_mask(M, mask)
