"""Finite monoids given by Cayley tables, and the subset primitives every
other module builds on.

Elements are the dense indices ``0..n-1``.  Subsets are returned as sorted
tuples of indices ("element sets"), so two subsets are equal exactly when
their tuples are.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import bounds
from .errors import (
    BoundExceeded,
    IdentityViolation,
    MalformedTable,
    NotAssociative,
    SizeOverflow,
)

ElementSet = tuple  # sorted tuple of element indices


def element_set(members: Iterable[int]) -> ElementSet:
    return tuple(sorted({int(x) for x in members}))


class FiniteMonoid:
    """A monoid on ``range(size)`` with ``table[x][y] == x*y``.

    Instances are treated as immutable: the numpy table is flagged
    read-only and the list-of-lists views are built once.
    """

    __slots__ = ("size", "identity", "table", "labels", "validated", "_rows", "_cols")

    def __init__(self, table, identity: int, labels=None, validated: bool = True):
        arr = np.array(table, dtype=np.int64, copy=True)
        arr.setflags(write=False)
        self.table = arr
        self.size = int(arr.shape[0])
        self.identity = int(identity)
        self.labels = tuple(labels) if labels is not None else None
        self.validated = validated
        self._rows = None
        self._cols = None

    @property
    def rows(self) -> list[list[int]]:
        """``rows[x][z] == x*z`` as plain Python ints (fast scalar access)."""
        if self._rows is None:
            self._rows = self.table.tolist()
        return self._rows

    @property
    def cols(self) -> list[list[int]]:
        """``cols[x][z] == z*x``."""
        if self._cols is None:
            self._cols = self.table.T.tolist()
        return self._cols

    def mul(self, x: int, y: int) -> int:
        return self.rows[x][y]

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def idempotents(self) -> ElementSet:
        idx = np.arange(self.size)
        return tuple(np.flatnonzero(self.table[idx, idx] == idx).tolist())

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"FiniteMonoid(size={self.size}, identity={self.identity})"


@dataclass(frozen=True)
class MonoidMorphism:
    source: FiniteMonoid
    target: FiniteMonoid
    map: tuple

    def __call__(self, x: int) -> int:
        return self.map[x]

    def is_homomorphism(self) -> bool:
        f = np.asarray(self.map)
        if f[self.source.identity] != self.target.identity:
            return False
        lhs = f[self.source.table]
        rhs = self.target.table[np.ix_(f, f)]
        return bool(np.array_equal(lhs, rhs))

    def is_bijective(self) -> bool:
        return len(set(self.map)) == self.target.size == self.source.size


def from_table(table, identity: int, labels=None, validation: str = "auto") -> FiniteMonoid:
    """Validate a Cayley table and wrap it as a :class:`FiniteMonoid`.

    ``validation`` is ``"full"`` (exhaustive), ``"spot"`` (random triples,
    result flagged ``validated=False``) or ``"auto"`` (full up to
    ``bounds.VALIDATION_BOUND`` elements).
    """
    try:
        arr = np.array(table, dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise MalformedTable(f"table is not a rectangular integer array: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise MalformedTable("table must be a non-empty square array", shape=list(arr.shape))
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise MalformedTable("table entries out of range", size=n)
    if not 0 <= identity < n:
        raise MalformedTable("identity index out of range", identity=identity, size=n)
    if labels is not None and len(labels) != n:
        raise MalformedTable("labels length differs from table size", size=n)

    idx = np.arange(n)
    bad = np.flatnonzero((arr[identity] != idx) | (arr[:, identity] != idx))
    if bad.size:
        raise IdentityViolation(f"identity law fails at element {bad[0]}", x=int(bad[0]))

    if validation == "auto":
        validation = "full" if n <= bounds.VALIDATION_BOUND else "spot"
    if validation == "full":
        witness = _associativity_witness(arr)
        validated = True
    elif validation == "spot":
        witness = _spot_check(arr)
        validated = False
    else:
        raise ValueError(f"unknown validation mode {validation!r}")
    if witness is not None:
        x, y, z = witness
        raise NotAssociative(f"(x*y)*z != x*(y*z) at {witness}", x=x, y=y, z=z)
    return FiniteMonoid(arr, identity, labels, validated=validated)


def _associativity_witness(arr: np.ndarray):
    n = arr.shape[0]
    if n <= 256:
        # direct scan: (xy)z vs x(yz), one x at a time
        for x in range(n):
            lhs = arr[arr[x]]  # lhs[y, z] = (x y) z
            rhs = arr[x][arr]  # rhs[y, z] = x (y z)
            diff = np.argwhere(lhs != rhs)
            if diff.size:
                y, z = diff[0]
                return (x, int(y), int(z))
        return None
    return _light_test(arr)


def _light_test(arr: np.ndarray):
    # Light's test: elements g with (xg)y == x(gy) for all x,y form a
    # sub-magma, so checking a generating set decides associativity.
    n = arr.shape[0]
    covered = np.zeros(n, dtype=bool)
    gens = []
    # wide rows (units first) tend to generate a lot
    spread = np.array([np.unique(row).size for row in arr])
    for g in np.argsort(-spread, kind="stable").tolist():
        if covered[g]:
            continue
        lhs = arr[arr[:, g]]  # lhs[x, y] = (x g) y
        rhs = arr[np.arange(n)[:, None], arr[g][None, :]]  # x (g y)
        diff = np.argwhere(lhs != rhs)
        if diff.size:
            x, y = diff[0]
            return (int(x), g, int(y))
        gens.append(g)
        covered = _magma_closure(arr, gens)
    return None


def _magma_closure(arr: np.ndarray, gens) -> np.ndarray:
    n = arr.shape[0]
    mask = np.zeros(n, dtype=bool)
    mask[gens] = True
    frontier = np.array(sorted(set(gens)), dtype=np.int64)
    while frontier.size:
        members = np.flatnonzero(mask)
        prods = np.concatenate(
            [arr[np.ix_(frontier, members)].ravel(), arr[np.ix_(members, frontier)].ravel()]
        )
        new = np.unique(prods[~mask[prods]])
        mask[new] = True
        frontier = new
    return mask


def _spot_check(arr: np.ndarray, samples: int = 200_000, seed: int = 0):
    n = arr.shape[0]
    rng = np.random.default_rng(seed)
    x, y, z = rng.integers(0, n, size=(3, samples))
    bad = np.flatnonzero(arr[arr[x, y], z] != arr[x, arr[y, z]])
    if bad.size:
        i = bad[0]
        return (int(x[i]), int(y[i]), int(z[i]))
    return None


# ---------------------------------------------------------------- subsets


def _mask(M: FiniteMonoid, T: Iterable[int]) -> np.ndarray:
    mask = np.zeros(M.size, dtype=bool)
    idx = list(T)
    if idx:
        mask[idx] = True
    return mask


def _as_set(mask: np.ndarray) -> ElementSet:
    return tuple(np.flatnonzero(mask).tolist())


def inverse_map(M: FiniteMonoid) -> dict[int, int]:
    """Map each unit to its two-sided inverse."""
    e = M.identity
    both = (M.table == e) & (M.table.T == e)
    xs, ys = np.nonzero(both)
    return dict(zip(xs.tolist(), ys.tolist()))


def units(M: FiniteMonoid) -> ElementSet:
    return element_set(inverse_map(M))


def _closure_mask(M: FiniteMonoid, mask: np.ndarray) -> np.ndarray:
    """Least submonoid containing ``mask`` (frontier saturation)."""
    arr = M.table
    mask = mask.copy()
    mask[M.identity] = True
    frontier = np.flatnonzero(mask)
    while frontier.size:
        members = np.flatnonzero(mask)
        prods = np.concatenate(
            [arr[np.ix_(frontier, members)].ravel(), arr[np.ix_(members, frontier)].ravel()]
        )
        new = np.unique(prods[~mask[prods]])
        mask[new] = True
        frontier = new
    return mask


def submonoid_generated(M: FiniteMonoid, T: Iterable[int]) -> ElementSet:
    return _as_set(_closure_mask(M, _mask(M, T)))


def _groupal_mask(M: FiniteMonoid, mask: np.ndarray, inv: dict | None = None) -> np.ndarray:
    if inv is None:
        inv = inverse_map(M)
    unit_idx = np.array(sorted(inv), dtype=np.int64)
    unit_inv = np.array([inv[u] for u in unit_idx.tolist()], dtype=np.int64)
    mask = _closure_mask(M, mask)
    while True:
        missing = unit_inv[mask[unit_idx] & ~mask[unit_inv]]
        if not missing.size:
            return mask
        mask[missing] = True
        mask = _closure_mask(M, mask)


def groupal_closure(M: FiniteMonoid, T: Iterable[int]) -> ElementSet:
    return _as_set(_groupal_mask(M, _mask(M, T)))


def is_submonoid(M: FiniteMonoid, S: Iterable[int]) -> bool:
    S = list(S)
    mask = _mask(M, S)
    if not mask[M.identity]:
        return False
    return bool(mask[M.table[np.ix_(S, S)]].all())


def is_groupal(M: FiniteMonoid, S: Iterable[int]) -> bool:
    S = list(S)
    if not is_submonoid(M, S):
        return False
    inv = inverse_map(M)
    members = set(S)
    return all(inv[x] in members for x in S if x in inv)


def is_ideal(M: FiniteMonoid, I: Iterable[int]) -> bool:
    I = list(I)
    if not I:
        return False
    mask = _mask(M, I)
    # MIM in I  <=>  MI in I and IM in I, since 1 is in M
    return bool(mask[M.table[:, I]].all() and mask[M.table[I, :]].all())


def is_group(M: FiniteMonoid) -> bool:
    return len(inverse_map(M)) == M.size


# ------------------------------------------------------------- products


def direct_product(M: FiniteMonoid, N: FiniteMonoid, bound: int | None = None) -> FiniteMonoid:
    bound = bounds.PRODUCT_BOUND if bound is None else bound
    size = M.size * N.size
    if size > bound:
        raise SizeOverflow(f"product has {size} elements, bound is {bound}", size=size, bound=bound)
    # (a, b) -> a * |N| + b
    a = np.repeat(np.arange(M.size), N.size)
    b = np.tile(np.arange(N.size), M.size)
    table = M.table[np.ix_(a, a)] * N.size + N.table[np.ix_(b, b)]
    labels = [f"({M.label(i)},{N.label(j)})" for i, j in zip(a.tolist(), b.tolist())]
    return FiniteMonoid(table, M.identity * N.size + N.identity, labels)


# ----------------------------------------------------------- isomorphism


def _element_invariants(M: FiniteMonoid) -> list[tuple]:
    inv = inverse_map(M)
    rows = M.rows
    out = []
    for x in range(M.size):
        # index and period of the cyclic submonoid generated by x
        seen = {M.identity: 0}
        p, k = M.identity, 0
        while True:
            p = rows[p][x]
            k += 1
            if p in seen:
                index, period = seen[p], k - seen[p]
                break
            seen[p] = k
        fixes_left = sum(1 for z in range(M.size) if rows[z][x] == x)
        fixes_right = sum(1 for z in range(M.size) if rows[x][z] == x)
        out.append((x in inv, rows[x][x] == x, index, period, fixes_left, fixes_right))
    return out


def find_isomorphism(M: FiniteMonoid, N: FiniteMonoid, bound: int | None = None):
    """Return an isomorphism ``M -> N`` as a :class:`MonoidMorphism`, or None."""
    bound = bounds.ISOMORPHISM_BOUND if bound is None else bound
    if max(M.size, N.size) > bound:
        raise BoundExceeded(
            f"isomorphism search is capped at {bound} elements",
            sizes=[M.size, N.size], bound=bound,
        )
    if M.size != N.size:
        return None
    if len(units(M)) != len(units(N)) or len(M.idempotents()) != len(N.idempotents()):
        return None
    inv_m, inv_n = _element_invariants(M), _element_invariants(N)
    if sorted(inv_m) != sorted(inv_n):
        return None
    if inv_m[M.identity] != inv_n[N.identity]:
        return None

    n = M.size
    rm, rn = M.rows, N.rows
    candidates = [[y for y in range(n) if inv_n[y] == inv_m[x]] for x in range(n)]

    def extend(f: dict, g: dict, x: int, y: int):
        # assign x -> y and propagate through products of assigned elements
        f, g = dict(f), dict(g)
        stack = [(x, y)]
        while stack:
            a, b = stack.pop()
            if a in f:
                if f[a] != b:
                    return None
                continue
            if b in g or inv_m[a] != inv_n[b]:
                return None
            f[a], g[b] = b, a
            for c, d in list(f.items()):
                stack.append((rm[a][c], rn[b][d]))
                stack.append((rm[c][a], rn[d][b]))
        return f, g

    def search(f, g):
        if len(f) == n:
            return f
        x = next(i for i in range(n) if i not in f)
        for y in candidates[x]:
            if y in g:
                continue
            step = extend(f, g, x, y)
            if step is not None:
                found = search(*step)
                if found is not None:
                    return found
        return None

    start = extend({}, {}, M.identity, N.identity)
    if start is None:
        return None
    f = search(*start)
    if f is None:
        return None
    morphism = MonoidMorphism(M, N, tuple(f[i] for i in range(n)))
    assert morphism.is_homomorphism() and morphism.is_bijective()
    return morphism


# ------------------------------------------------------------------ JSON


def to_json(M: FiniteMonoid) -> dict:
    out = {"size": M.size, "identity": M.identity, "table": M.table.tolist()}
    if M.labels is not None:
        out["labels"] = list(M.labels)
    return out


def from_json(data: dict | str) -> FiniteMonoid:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        table, identity = data["table"], data["identity"]
    except KeyError as exc:
        raise MalformedTable(f"missing field {exc}") from None
    if "size" in data and data["size"] != len(table):
        raise MalformedTable("size field disagrees with table", size=data["size"])
    return from_table(table, identity, data.get("labels"))


def load(path) -> FiniteMonoid:
    with open(path) as fh:
        return from_json(json.load(fh))


def multiplication_table(M: FiniteMonoid, S: Sequence[int]) -> list[list[int]]:
    """Restriction of the table to ``S`` (entries are elements of M)."""
    return M.table[np.ix_(list(S), list(S))].tolist()
