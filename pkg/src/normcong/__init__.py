"""Normal submonoids, normal closures and congruence lattices of finite monoids."""
from __future__ import annotations

from .builders import (
    Transformation,
    TransformationCodec,
    boolean_monoid,
    cyclic_monoid,
    distinguished_subsets,
    full_transformation_monoid,
    nmax_truncated,
    rank_ideal,
    sign_monoid,
    small_groups,
)
from .congruences import (
    Congruence,
    classify_congruence,
    congruence_closure,
    deformation_reachable,
    enumerate_congruences,
    identity_class,
    induced_congruence,
    is_congruentially_simple,
    is_unital,
    malcev_congruence,
    quotient,
    rees_congruence,
    unital_transfer,
    verify_blowup,
)
from .errors import MonoidError
from .lattice import Lattice, build_lattice, is_chain, is_modular, to_dot
from .monoid import FiniteMonoid, MonoidMorphism, find_isomorphism, from_table
from .normality import (
    enumerate_normal_submonoids,
    is_invariant,
    is_normal_monoid,
    is_normal_submonoid,
    is_normally_simple,
    normal_closure,
    stability_set,
)

__version__ = "0.1.0"
