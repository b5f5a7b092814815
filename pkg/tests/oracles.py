"""Brute-force reference implementations, written straight from the
definitions and independent of the package's algorithms."""
from __future__ import annotations

from itertools import combinations


def rows_of(M):
    return [list(map(int, r)) for r in M.table.tolist()]


def set_partitions(n):
    """All set partitions of range(n) as restricted-growth class vectors."""
    if n == 0:
        yield []
        return

    def rec(prefix, top):
        if len(prefix) == n:
            yield list(prefix)
            return
        for c in range(top + 2):
            prefix.append(c)
            yield from rec(prefix, max(top, c))
            prefix.pop()

    yield from rec([0], 0)


def is_congruence(t, labels):
    n = len(t)
    for x in range(n):
        for y in range(n):
            if labels[x] != labels[y]:
                continue
            for z in range(n):
                if labels[t[z][x]] != labels[t[z][y]] or labels[t[x][z]] != labels[t[y][z]]:
                    return False
    return True


def all_congruences(M):
    t = rows_of(M)
    return {tuple(p) for p in set_partitions(M.size) if is_congruence(t, p)}


def canonical(labels):
    seen = {}
    return tuple(seen.setdefault(c, len(seen)) for c in labels)


def units(t, e):
    n = len(t)
    return {x for x in range(n) if any(t[x][y] == e and t[y][x] == e for y in range(n))}


def inverse(t, e, x):
    for y in range(len(t)):
        if t[x][y] == e and t[y][x] == e:
            return y
    return None


def is_submonoid(t, e, S):
    return e in S and all(t[a][b] in S for a in S for b in S)


def is_groupal(t, e, S):
    return all(inverse(t, e, u) in S for u in S if inverse(t, e, u) is not None)


def stability(t, A):
    n = len(t)
    return {(x, y) for x in range(n) for y in range(n) if any(t[t[x][a]][y] in A for a in A)}


def is_invariant(t, S):
    return all(t[t[x][s]][y] in S for (x, y) in stability(t, S) for s in S)


def is_normal(t, e, S):
    return is_submonoid(t, e, S) and is_groupal(t, e, S) and is_invariant(t, S)


def all_normal_submonoids(M):
    t, e, n = rows_of(M), M.identity, M.size
    out = set()
    others = [x for x in range(n) if x != e]
    for r in range(len(others) + 1):
        for extra in combinations(others, r):
            S = frozenset((e,) + extra)
            if is_normal(t, e, S):
                out.add(tuple(sorted(S)))
    return out


def normal_closure_by_intersection(M, A, family=None):
    family = family if family is not None else all_normal_submonoids(M)
    best = set(range(M.size))
    for S in family:
        if set(A) <= set(S):
            best &= set(S)
    return tuple(sorted(best))


def deformation_partition(M, A):
    """Equivalence generated by v1 v2 ~ v1 a v2, via iterated relabelling."""
    t = rows_of(M)
    n = M.size
    label = list(range(n))
    changed = True
    while changed:
        changed = False
        for v1 in range(n):
            for v2 in range(n):
                for a in A:
                    p, q = label[t[v1][v2]], label[t[t[v1][a]][v2]]
                    if p != q:
                        lo, hi = min(p, q), max(p, q)
                        label = [lo if c == hi else c for c in label]
                        changed = True
    return canonical(label)


def least_congruence_containing(M, pairs):
    """Intersection of every congruence containing the pairs."""
    best = None
    for p in all_congruences(M):
        if all(p[x] == p[y] for x, y in pairs):
            best = p if best is None else canonical(tuple(zip(best, p)))
    return canonical(best)
