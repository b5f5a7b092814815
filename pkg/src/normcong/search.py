"""Randomized and catalog searches around open questions.

Nothing here asserts an answer; each routine only records what it sees.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .builders import monoid_catalog, random_monoid
from .congruences import enumerate_congruences, identity_class, induced_congruence
from .lattice import is_modular, subset_lattice
from .monoid import FiniteMonoid, is_group
from .normality import enumerate_normal_submonoids, is_normal_monoid, normal_closure


@dataclass
class Findings:
    examined: int = 0
    non_modular_norsub: list = field(default_factory=list)
    units_not_normal: list = field(default_factory=list)
    nongroup_norsub_equals_cong: list = field(default_factory=list)
    phi_not_meet_preserving: list = field(default_factory=list)
    psi_not_join_preserving: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "examined": self.examined,
            "non_modular_norsub": self.non_modular_norsub,
            "units_not_normal": self.units_not_normal,
            "nongroup_norsub_equals_cong": self.nongroup_norsub_equals_cong,
            "phi_not_meet_preserving": self.phi_not_meet_preserving,
            "psi_not_join_preserving": self.psi_not_join_preserving,
        }


def examine(M: FiniteMonoid, name: str, findings: Findings, limit: int = 5) -> None:
    findings.examined += 1
    table = M.table.tolist()
    norsub = enumerate_normal_submonoids(M)
    ok, witness = is_modular(subset_lattice(norsub))
    if not ok and len(findings.non_modular_norsub) < limit:
        findings.non_modular_norsub.append({"monoid": name, "table": table, "witness": list(witness)})
    if not is_normal_monoid(M) and len(findings.units_not_normal) < limit:
        findings.units_not_normal.append({"monoid": name, "table": table})
    congs = enumerate_congruences(M)
    # Phi is injective, so equal sizes means NorSub and Cong are isomorphic
    if len(congs) == len(norsub) and not is_group(M) and len(findings.nongroup_norsub_equals_cong) < limit:
        findings.nongroup_norsub_equals_cong.append({"monoid": name, "table": table, "lattice_size": len(congs)})
    induced = {S: induced_congruence(M, S) for S in norsub}
    for i, S in enumerate(norsub):
        for T in norsub[i + 1:]:
            meet_S = tuple(sorted(set(S) & set(T)))
            if induced[meet_S] != induced[S].meet(induced[T]):
                if len(findings.phi_not_meet_preserving) < limit:
                    findings.phi_not_meet_preserving.append(
                        {"monoid": name, "table": table, "pair": [list(S), list(T)]})
                break
        else:
            continue
        break
    anchors = {R: identity_class(R) for R in congs}
    done = False
    for i, R in enumerate(congs):
        for Q in congs[i + 1:]:
            lhs = anchors[R.join(Q)]
            rhs = normal_closure(M, set(anchors[R]) | set(anchors[Q]))
            if lhs != rhs:
                if len(findings.psi_not_join_preserving) < limit:
                    findings.psi_not_join_preserving.append(
                        {"monoid": name, "table": table, "pair": [R.to_json(), Q.to_json()]})
                done = True
                break
        if done:
            break


def run_search(seed: int = 0, random_count: int = 200, max_size: int = 6, catalog_size: int = 4) -> Findings:
    findings = Findings()
    for i, M in enumerate(monoid_catalog(catalog_size)):
        examine(M, f"catalog[{i}]", findings)
    rng = random.Random(seed)
    for i in range(random_count):
        examine(random_monoid(rng, max_size), f"random[{seed}:{i}]", findings)
    return findings
