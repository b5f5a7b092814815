"""Congruences on finite monoids: closure, induced congruences R_A, quotients,
the congruence lattice, unital transfer across normal quotients, and the
Malcev congruences R_{k,N} on the full transformation monoid."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import bounds
from .builders import Transformation, TransformationCodec, full_transformation_monoid
from .errors import (
    BadParameters,
    BoundExceeded,
    FiberMismatch,
    InternalError,
    NotCommutative,
    NotIdeal,
    NotNormalSubgroup,
    NotSubsemigroup,
    NotUnital,
    RankOutOfRange,
)
from .monoid import (
    ElementSet,
    FiniteMonoid,
    MonoidMorphism,
    _mask,
    from_table,
    inverse_map,
    is_ideal,
)
from .normality import enumerate_normal_submonoids, is_normal_submonoid

# worklist union-find below this size, vectorised rounds above
_WORKLIST_LIMIT = 128


def _canonical(labels) -> np.ndarray:
    """Renumber classes 0..c-1 in order of their least member."""
    labels = np.asarray(labels)
    _, first, inv = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(first.size, dtype=np.int64)
    rank[np.argsort(first)] = np.arange(first.size)
    return rank[inv.ravel()]


class Congruence:
    __slots__ = ("monoid", "_labels", "_key")

    def __init__(self, monoid: FiniteMonoid, class_of):
        labels = _canonical(class_of)
        if labels.size != monoid.size:
            raise BadParameters("class vector length differs from the monoid size")
        labels.setflags(write=False)
        self.monoid = monoid
        self._labels = labels
        self._key = labels.tobytes()

    @property
    def labels(self) -> np.ndarray:
        return self._labels

    @property
    def class_of(self) -> tuple:
        return tuple(self._labels.tolist())

    @property
    def num_classes(self) -> int:
        return int(self._labels.max()) + 1 if self._labels.size else 0

    def classes(self) -> tuple[ElementSet, ...]:
        order = np.argsort(self._labels, kind="stable")
        bounds_ = np.flatnonzero(np.diff(self._labels[order])) + 1
        return tuple(tuple(part.tolist()) for part in np.split(order, bounds_))

    def related(self, x: int, y: int) -> bool:
        return bool(self._labels[x] == self._labels[y])

    def refines(self, other: "Congruence") -> bool:
        """self is contained in other as a set of pairs."""
        reps = _class_reps(self._labels)
        return bool((other._labels == other._labels[reps[self._labels]]).all())

    def meet(self, other: "Congruence") -> "Congruence":
        return Congruence(self.monoid, self._labels * (other.num_classes + 1) + other._labels)

    def join(self, other: "Congruence") -> "Congruence":
        n = self.monoid.size
        r1 = _class_reps(self._labels)[self._labels]
        r2 = _class_reps(other._labels)[other._labels]
        return Congruence(self.monoid, _components(n, np.concatenate([r1, r2]), np.tile(np.arange(n), 2)))

    def is_compatible(self) -> bool:
        lab = self._labels
        C = lab[self.monoid.table]  # C[x, y] = class of xy
        reps = _class_reps(lab)[lab]
        return bool((C[:, reps] == C).all() and (C[reps, :] == C).all())

    def is_equivalence(self) -> bool:
        return True  # a class vector always is one

    def __eq__(self, other) -> bool:
        return isinstance(other, Congruence) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __lt__(self, other: "Congruence") -> bool:
        return _sort_key(self) < _sort_key(other)

    def __repr__(self) -> str:
        return f"Congruence({self.num_classes} classes on {self.monoid.size})"

    def to_json(self) -> list[int]:
        return list(self.class_of)


def _sort_key(R: Congruence):
    return (-R.num_classes, R.class_of)


def _class_reps(labels: np.ndarray) -> np.ndarray:
    """Least member of each class, indexed by class number."""
    _, first = np.unique(labels, return_index=True)
    return first


def _components(n: int, src, dst) -> np.ndarray:
    g = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    return connected_components(g, directed=False)[1]


def identity_congruence(M: FiniteMonoid) -> Congruence:
    return Congruence(M, np.arange(M.size))


def universal_congruence(M: FiniteMonoid) -> Congruence:
    return Congruence(M, np.zeros(M.size, dtype=np.int64))


def _closure_worklist(M: FiniteMonoid, pairs) -> np.ndarray:
    n = M.size
    parent = list(range(n))
    size = [1] * n
    rows, cols = M.rows, M.cols
    classes = n

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    work = list(pairs)
    while work:
        u, v = work.pop()
        ru, rv = find(u), find(v)
        if ru == rv:
            continue
        if size[ru] < size[rv]:
            ru, rv = rv, ru
        parent[rv] = ru
        size[ru] += size[rv]
        classes -= 1
        if classes == 1:
            break
        # the merged classes must stay merged after translating either side
        work.extend(zip(rows[u], rows[v]))
        work.extend(zip(cols[u], cols[v]))
    return np.array([find(x) for x in range(n)], dtype=np.int64)


def _closure_rounds(M: FiniteMonoid, pairs) -> np.ndarray:
    # repeat: identify x with its class representative after one translation
    n = M.size
    table = M.table
    pairs = np.asarray(list(pairs), dtype=np.int64).reshape(-1, 2)
    labels = _components(n, pairs[:, 0], pairs[:, 1])
    count = int(labels.max()) + 1
    ar = np.arange(n)
    while count > 1:
        r = _class_reps(labels)[labels]
        idx = np.flatnonzero(r != ar)
        ri = r[idx]
        src = np.concatenate([ar, table[:, idx].ravel(), table[idx, :].ravel()])
        dst = np.concatenate([r, table[:, ri].ravel(), table[ri, :].ravel()])
        labels = _components(n, src, dst)
        new_count = int(labels.max()) + 1
        if new_count == count:
            break
        count = new_count
    return labels


def congruence_closure(M: FiniteMonoid, pairs: Iterable[tuple[int, int]], method: str = "auto") -> Congruence:
    """Least congruence containing the given pairs."""
    pairs = [(int(x), int(y)) for x, y in pairs]
    for x, y in pairs:
        if not (0 <= x < M.size and 0 <= y < M.size):
            raise BadParameters("pair index out of range", pair=[x, y])
    if method == "auto":
        method = "worklist" if M.size <= _WORKLIST_LIMIT else "rounds"
    if method == "worklist":
        labels = _closure_worklist(M, pairs)
    elif method == "rounds":
        labels = _closure_rounds(M, pairs)
    else:
        raise BadParameters(f"unknown closure method {method!r}")
    return Congruence(M, labels)


def induced_congruence(M: FiniteMonoid, A: Iterable[int]) -> Congruence:
    """R_A: the least congruence relating the identity to every member of A."""
    return congruence_closure(M, [(M.identity, a) for a in set(A)])


def _deformation_adjacency(M: FiniteMonoid, A: Iterable[int]) -> list[set]:
    # v1 v2 -- v1 a v2, read symmetrically
    rows = M.rows
    n = M.size
    adj = [set() for _ in range(n)]
    A = sorted(set(A))
    for v1 in range(n):
        r1 = rows[v1]
        for a in A:
            ra = rows[r1[a]]
            for v2 in range(n):
                v, w = r1[v2], ra[v2]
                if v != w:
                    adj[v].add(w)
                    adj[w].add(v)
    return adj


def deformation_classes(M: FiniteMonoid, A: Iterable[int]) -> list[int]:
    """Component number per element under chains of A-deformations (BFS)."""
    adj = _deformation_adjacency(M, A)
    comp = [-1] * M.size
    c = 0
    for s in range(M.size):
        if comp[s] >= 0:
            continue
        comp[s] = c
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if comp[w] < 0:
                    comp[w] = c
                    queue.append(w)
        c += 1
    return comp


def deformation_reachable(M: FiniteMonoid, A: Iterable[int], x: int, y: int) -> bool:
    if x == y:
        return True
    adj = _deformation_adjacency(M, A)
    seen = {x}
    queue = deque([x])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w == y:
                return True
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return False


def identity_class(R: Congruence) -> ElementSet:
    lab = R.labels
    return tuple(np.flatnonzero(lab == lab[R.monoid.identity]).tolist())


def is_unital(R: Congruence) -> bool:
    M = R.monoid
    by_class = identity_class(R) == (M.identity,)
    # a unit related only to itself, for every unit
    lab = R.labels
    counts = np.bincount(lab)
    us = np.array(sorted(inverse_map(M)), dtype=np.int64)
    by_units = bool((counts[lab[us]] == 1).all())
    if by_class != by_units:
        raise InternalError("unital checks disagree", class_check=by_class, unit_check=by_units)
    return by_class


def units_restriction_is_identity(R: Congruence) -> bool:
    """Whether no two distinct units are related (weaker than unital)."""
    us = np.array(sorted(inverse_map(R.monoid)), dtype=np.int64)
    return np.unique(R.labels[us]).size == us.size


def rees_congruence(M: FiniteMonoid, I: Iterable[int]) -> Congruence:
    I = sorted(set(I))
    if not I or not is_ideal(M, I):
        raise NotIdeal("Rees congruence needs a two-sided ideal", subset=I)
    labels = np.arange(M.size)
    labels[I] = I[0]
    return Congruence(M, labels)


def quotient(M: FiniteMonoid, R: Congruence) -> tuple[FiniteMonoid, MonoidMorphism]:
    lab = R.labels
    reps = _class_reps(lab)
    table = lab[M.table[np.ix_(reps, reps)]]
    labels = ["[" + M.label(int(r)) + "]" for r in reps]
    try:
        Q = from_table(table, int(lab[M.identity]), labels, validation="full")
    except Exception as exc:  # a compatible relation always yields a monoid
        raise InternalError(f"quotient failed validation: {exc}") from exc
    return Q, MonoidMorphism(M, Q, tuple(lab.tolist()))


def _unit_automorphisms(M: FiniteMonoid) -> list[np.ndarray]:
    """Distinct inner automorphisms x -> g x g^-1 by units g."""
    inv = inverse_map(M)
    table = M.table
    seen = {}
    for g in sorted(inv):
        phi = table[table[g], inv[g]]
        seen.setdefault(phi.tobytes(), phi)
    return list(seen.values())


def principal_congruences(M: FiniteMonoid) -> list[Congruence]:
    """Distinct (a, b)# over unordered pairs a != b."""
    n = M.size
    if n < 2:
        return []
    autos = _unit_automorphisms(M)
    a, b = np.triu_indices(n, k=1)
    code = a * n + b
    best = code.copy()
    for phi in autos:
        pa, pb = phi[a], phi[b]
        best = np.minimum(best, np.minimum(pa, pb) * n + np.maximum(pa, pb))
    reps = np.flatnonzero(best == code)
    found = set()
    inverses = [np.argsort(phi) for phi in autos]
    for i in reps:
        R = congruence_closure(M, [(int(a[i]), int(b[i]))])
        if R in found:
            continue
        # images under unit conjugation are the principal congruences of the orbit
        for phinv in inverses:
            found.add(Congruence(M, R.labels[phinv]))
    return sorted(found, key=_sort_key)


def enumerate_congruences(M: FiniteMonoid, bound: int | None = None) -> list[Congruence]:
    """Cong(M) ordered from the finest (identity) to the coarsest."""
    bound = bounds.CONG_BOUND if bound is None else bound
    if M.size > bound:
        raise BoundExceeded(
            f"congruence enumeration is capped at {bound} elements (got {M.size})",
            size=M.size, bound=bound,
        )
    principal = principal_congruences(M)
    family = {identity_congruence(M)} | set(principal)
    # every congruence is a join of principal ones
    queue = deque(sorted(family, key=_sort_key))
    while queue:
        R = queue.popleft()
        for P in principal:
            if P.refines(R):
                continue
            J = R.join(P)
            if J not in family:
                family.add(J)
                queue.append(J)
    out = sorted(family, key=_sort_key)
    for R in out:
        if not R.is_compatible():
            raise InternalError("enumerated relation is not a congruence", classes=R.to_json())
    return out


@dataclass(frozen=True)
class Classification:
    kind: str  # "normal" or "exceptional"
    anchor: ElementSet
    unital: bool

    def to_json(self) -> dict:
        return {"kind": self.kind, "identity_class": list(self.anchor), "unital": self.unital}


def classify_congruence(M: FiniteMonoid, R: Congruence) -> Classification:
    anchor = identity_class(R)
    kind = "normal" if induced_congruence(M, anchor) == R else "exceptional"
    return Classification(kind, anchor, is_unital(R))


class UnitalTransfer:
    """Maps between Cong_S(M) and the unital congruences of M/S."""

    def __init__(self, M: FiniteMonoid, S: Iterable[int]):
        S = tuple(sorted(set(S)))
        if not is_normal_submonoid(M, S):
            raise BadParameters("unital transfer needs a normal submonoid", subset=list(S))
        self.monoid = M
        self.submonoid = S
        self.induced = induced_congruence(M, S)
        self.quotient, self.projection = quotient(M, self.induced)
        self._reps = _class_reps(self.induced.labels)

    def push_down(self, R: Congruence) -> Congruence:
        if identity_class(R) != self.submonoid:
            raise FiberMismatch(
                "congruence does not have the submonoid as identity class",
                identity_class=list(identity_class(R)), submonoid=list(self.submonoid),
            )
        return Congruence(self.quotient, R.labels[self._reps])

    def lift(self, T: Congruence) -> Congruence:
        if T.monoid.size != self.quotient.size or not is_unital(T):
            raise NotUnital("only unital congruences on the quotient lift")
        return Congruence(self.monoid, T.labels[np.asarray(self.projection.map)])


def unital_transfer(M: FiniteMonoid, S: Iterable[int]) -> UnitalTransfer:
    return UnitalTransfer(M, S)


def unital_congruences(M: FiniteMonoid, bound: int | None = None) -> list[Congruence]:
    return [R for R in enumerate_congruences(M, bound) if is_unital(R)]


@dataclass
class BlowupReport:
    total: int
    fiber_sum: int
    fibers: list = field(default_factory=list)
    passed: bool = True
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "cong_count": self.total,
            "fiber_sum": self.fiber_sum,
            "cardinality_ok": self.total == self.fiber_sum,
            "fibers": self.fibers,
            "passed": self.passed,
            "failures": self.failures,
        }


def verify_blowup(M: FiniteMonoid, bound: int | None = None, norsub_bound: int | None = None) -> BlowupReport:
    congs = enumerate_congruences(M, bound)
    norsub = enumerate_normal_submonoids(M, norsub_bound)
    by_anchor: dict[ElementSet, list[Congruence]] = {}
    for R in congs:
        by_anchor.setdefault(identity_class(R), []).append(R)
    failures = []
    stray = sorted(set(by_anchor) - set(norsub))
    if stray:
        failures.append({"check": "identity_class_normal", "subsets": [list(s) for s in stray]})
    fibers = []
    fiber_sum = 0
    for S in norsub:
        tr = unital_transfer(M, S)
        unital_q = set(unital_congruences(tr.quotient, bound))
        fiber = by_anchor.get(S, [])
        pushed = {tr.push_down(R) for R in fiber}
        roundtrip = all(tr.lift(tr.push_down(R)) == R for R in fiber) and all(
            tr.push_down(tr.lift(T)) == T for T in unital_q
        )
        ok = len(fiber) == len(unital_q) and pushed == unital_q and roundtrip
        if tr.push_down(tr.induced) != identity_congruence(tr.quotient):
            ok = False
        fiber_sum += len(unital_q)
        fibers.append({
            "normal_submonoid": list(S),
            "quotient_size": tr.quotient.size,
            "fiber_size": len(fiber),
            "unital_on_quotient": len(unital_q),
            "roundtrip_ok": bool(roundtrip),
            "ok": bool(ok),
        })
        if not ok:
            failures.append({"check": "fiber", "normal_submonoid": list(S)})
    if fiber_sum != len(congs):
        failures.append({"check": "cardinality", "cong": len(congs), "fiber_sum": fiber_sum})
    return BlowupReport(len(congs), fiber_sum, fibers, not failures, failures)


def is_congruentially_simple(M: FiniteMonoid, bound: int | None = None, norsub_bound: int | None = None) -> bool:
    for S in enumerate_normal_submonoids(M, norsub_bound):
        if S == (M.identity,):
            continue
        Q, _ = quotient(M, induced_congruence(M, S))
        if len(unital_congruences(Q, bound)) != 1:
            return False
    return True


# Malcev congruences on T_n

@lru_cache(maxsize=8)
def _tn(n: int):
    return full_transformation_monoid(n)


def _compose(p: tuple, q: tuple) -> tuple:
    return tuple(p[q[i] - 1] for i in range(len(q)))


def _as_permutation(p, k: int) -> tuple:
    if isinstance(p, Transformation):
        p = p.images
    elif isinstance(p, (int, np.integer)):
        p = TransformationCodec(k).decode(int(p)).images
    p = tuple(int(v) for v in p)
    if sorted(p) != list(range(1, k + 1)):
        raise NotNormalSubgroup(f"{list(p)} is not a permutation of 1..{k}")
    return p


def _check_normal_subgroup(N: set, k: int) -> None:
    ident = tuple(range(1, k + 1))
    if ident not in N:
        raise NotNormalSubgroup("subgroup must contain the identity permutation")
    for p in N:
        for q in N:
            if _compose(p, q) not in N:
                raise NotNormalSubgroup("not closed under composition", witness=[list(p), list(q)])
    for g in itertools.permutations(ident):
        ginv = tuple(np.argsort(g) + 1)
        for p in N:
            if _compose(_compose(g, p), ginv) not in N:
                raise NotNormalSubgroup("not closed under conjugation", witness=[list(g), list(p)])


def normal_subgroups_of_symmetric_group(k: int) -> list[tuple]:
    """Normal subgroups of S_k as sorted tuples of image tuples."""
    perms = list(itertools.permutations(range(1, k + 1)))
    inv = {p: tuple(int(v) for v in np.argsort(p) + 1) for p in perms}

    def generated(gens):
        group = {tuple(range(1, k + 1))} | set(gens)
        frontier = list(group)
        while frontier:
            new = []
            for p in frontier:
                for q in list(group):
                    for r in (_compose(p, q), _compose(q, p)):
                        if r not in group:
                            group.add(r)
                            new.append(r)
            frontier = new
        return frozenset(group)

    family = {frozenset([tuple(range(1, k + 1))])}
    for p in perms:
        family.add(generated({_compose(_compose(g, p), inv[g]) for g in perms}))
    changed = True
    while changed:
        changed = False
        for A, B in itertools.combinations(list(family), 2):
            J = generated(A | B)
            if J not in family:
                family.add(J)
                changed = True
    return sorted((tuple(sorted(N)) for N in family), key=lambda N: (len(N), N))


def malcev_congruence(n: int, k: int, N: Iterable) -> Congruence:
    """R_{k,N} on T_n for N a normal subgroup of S_k.

    Rank-k maps u, v are related when they share image and kernel and the
    permutation of the image they differ by, read through the increasing
    enumeration of the image, lies in N.
    """
    if not 1 <= k <= n:
        raise RankOutOfRange(f"rank threshold must lie in 1..{n}, got {k}", n=n, k=k)
    Nset = {_as_permutation(p, k) for p in N}
    _check_normal_subgroup(Nset, k)
    M, codec = _tn(n)
    imgs = codec.all_images()  # 0-based images per element
    ranks = np.array([len(set(row)) for row in imgs.tolist()])
    labels = np.arange(M.size)
    low = np.flatnonzero(ranks < k)
    if low.size:
        labels[low] = low[0]
    perms0 = [np.array(p) - 1 for p in Nset]
    powers = n ** np.arange(n - 1, -1, -1)
    for u in np.flatnonzero(ranks == k):
        row = imgs[u]
        image = np.unique(row)  # increasing i_1 < ... < i_k
        pos = np.searchsorted(image, row)  # j with u(x) = i_j
        orbit = [int((image[p[pos]] * powers).sum()) for p in perms0]
        labels[u] = min(orbit)
    R = Congruence(M, labels)
    if not R.is_compatible():
        raise InternalError("Malcev relation failed the compatibility check", n=n, k=k)
    return R


def malcev_chain(n: int) -> list[Congruence]:
    """All R_{k,N} plus the universal congruence, finest first."""
    M, _ = _tn(n)
    family = {universal_congruence(M)}
    for k in range(1, n + 1):
        for N in normal_subgroups_of_symmetric_group(k):
            family.add(malcev_congruence(n, k, N))
    return sorted(family, key=_sort_key)


def commutative_pair_oracle(M: FiniteMonoid, A: Iterable[int], x: int, y: int) -> bool:
    """(x, y) in R_A via x a = y a' for some a, a' in A (commutative M)."""
    if not M.is_commutative():
        raise NotCommutative("the pair criterion needs a commutative monoid")
    A = sorted(set(A))
    mask = _mask(M, A)
    if not A or not mask[M.table[np.ix_(A, A)]].all():
        raise NotSubsemigroup("A must be a non-empty subsemigroup", subset=A)
    xa = set(M.table[x, A].tolist())
    return x == y or bool(xa & set(M.table[y, A].tolist()))
