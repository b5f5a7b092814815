"""Finite lattices given by a node family and an order predicate."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from .errors import DuplicateNodes, InternalError, NotALattice


@dataclass(frozen=True, eq=False)
class Lattice:
    nodes: tuple
    leq: np.ndarray  # leq[i, j] iff nodes[i] <= nodes[j]
    join_table: np.ndarray
    meet_table: np.ndarray

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def bottom(self) -> int:
        return int(np.flatnonzero(self.leq.all(axis=1))[0])

    @property
    def top(self) -> int:
        return int(np.flatnonzero(self.leq.all(axis=0))[0])

    def join(self, i: int, j: int) -> int:
        return int(self.join_table[i, j])

    def meet(self, i: int, j: int) -> int:
        return int(self.meet_table[i, j])

    def covers(self) -> list[tuple[int, int]]:
        """Hasse edges (i, j): i < j with nothing strictly between."""
        lt = self.leq & ~np.eye(len(self.nodes), dtype=bool)
        between = (lt.astype(np.int32) @ lt.astype(np.int32)) > 0
        return [tuple(p) for p in np.argwhere(lt & ~between).tolist()]

    def validate(self) -> None:
        """Re-check the order and lub/glb properties; raises InternalError."""
        leq = self.leq
        n = len(self.nodes)
        if not leq.diagonal().all():
            raise InternalError("order is not reflexive")
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            raise InternalError("order is not antisymmetric")
        li = leq.astype(np.int32)
        if (((li @ li) > 0) & ~leq).any():
            raise InternalError("order is not transitive")
        for i in range(n):
            for j in range(n):
                k, m = self.join_table[i, j], self.meet_table[i, j]
                ub = leq[i] & leq[j]
                lb = leq[:, i] & leq[:, j]
                if not (ub[k] and leq[k, ub].all()):
                    raise InternalError("join table is not a least upper bound", pair=[i, j])
                if not (lb[m] and leq[lb, m].all()):
                    raise InternalError("meet table is not a greatest lower bound", pair=[i, j])


def build_lattice(nodes: Sequence[Any], leq_predicate: Callable[[Any, Any], bool]) -> Lattice:
    nodes = tuple(nodes)
    n = len(nodes)
    if n == 0:
        raise NotALattice("a lattice needs at least one node")
    try:
        seen = {}
        for i, x in enumerate(nodes):
            if x in seen:
                raise DuplicateNodes("node family contains a repeat", first=seen[x], second=i)
            seen[x] = i
    except TypeError:
        for i in range(n):
            for j in range(i):
                if nodes[i] == nodes[j]:
                    raise DuplicateNodes("node family contains a repeat", first=j, second=i)
    leq = np.array([[bool(leq_predicate(a, b)) for b in nodes] for a in nodes], dtype=bool).reshape(n, n)
    join_table = np.zeros((n, n), dtype=np.int64)
    meet_table = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i, n):
            ub = np.flatnonzero(leq[i] & leq[j])
            least = [k for k in ub if leq[k, ub].all()]
            if len(least) != 1:
                raise NotALattice("pair has no least upper bound", pair=[i, j])
            lb = np.flatnonzero(leq[:, i] & leq[:, j])
            greatest = [k for k in lb if leq[lb, k].all()]
            if len(greatest) != 1:
                raise NotALattice("pair has no greatest lower bound", pair=[i, j])
            join_table[i, j] = join_table[j, i] = least[0]
            meet_table[i, j] = meet_table[j, i] = greatest[0]
    return Lattice(nodes, leq, join_table, meet_table)


def is_modular(L: Lattice) -> tuple[bool, tuple[int, int, int] | None]:
    """Modular law a v (b ^ c) = (a v b) ^ c for a <= c.

    Returns the lexicographically least violating (a, b, c) on failure.
    """
    J, Mt = L.join_table, L.meet_table
    n = len(L)
    for a in range(n):
        cs = np.flatnonzero(L.leq[a])
        if cs.size == 0:
            continue
        lhs = J[a, Mt[:, cs]]  # lhs[b, i] for c = cs[i]
        rhs = Mt[J[a, :][:, None], cs[None, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            b, i = min((int(b), int(cs[i])) for b, i in bad)
            return False, (a, b, i)
    return True, None


def is_distributive(L: Lattice) -> bool:
    J, Mt = L.join_table, L.meet_table
    # x ^ (y v z) == (x ^ y) v (x ^ z) for every triple
    x = np.arange(len(L))[:, None, None]
    y = np.arange(len(L))[None, :, None]
    z = np.arange(len(L))[None, None, :]
    lhs = Mt[x, J[y, z]]
    rhs = J[Mt[x, y], Mt[x, z]]
    return bool((lhs == rhs).all())


def is_chain(L: Lattice) -> bool:
    return bool((L.leq | L.leq.T).all())


def _default_label(node) -> str:
    if isinstance(node, tuple):
        return "{" + ",".join(map(str, node)) + "}"
    return str(node)


def to_dot(L: Lattice, labeler: Callable[[Any], str] | None = None, name: str = "lattice") -> str:
    labeler = labeler or _default_label
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i, node in enumerate(L.nodes):
        label = labeler(node).replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  n{i} [label="{label}"];')
    for i, j in L.covers():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(L: Lattice, labeler: Callable[[Any], Any] | None = None) -> dict:
    labeler = labeler or (lambda node: list(node) if isinstance(node, tuple) else str(node))
    return {
        "nodes": [labeler(node) for node in L.nodes],
        "cover_edges": [list(e) for e in L.covers()],
    }


def subset_lattice(family: Sequence[tuple]) -> Lattice:
    """Lattice of ElementSets ordered by inclusion."""
    sets = {tuple(s): frozenset(s) for s in family}
    return build_lattice(family, lambda a, b: sets[tuple(a)] <= sets[tuple(b)])
