"""Exhaustive checking of comonad-generated factorizations on finite categories.

The package provides two concrete categories (modules over ``Z/n`` for
squarefree ``n`` and finite ``M``-sets), the factorization ``f = Rf∘Lf``
generated by a comonad, cleavages and their calculus, and search-based
oracles for lifting and retract questions over finite universes.
"""

from __future__ import annotations

from .analysis import (
    ComparisonReport,
    eq12_compare,
    exists_l_membership,
    find_filler,
    find_isomorphism,
    has_llp,
    has_rlp,
    is_retract_of,
    preimage_class,
    retract_closure,
)
from .cloven import (
    LeftCleavage,
    RetractWitness,
    RightCleavage,
    cleavage_from_retract,
    compose_cloven,
    delta_cleavage,
    extend_cleavage,
    find_cleavage_left,
    find_cleavage_right,
    identity_cleavage,
    is_cloven_morphism,
    is_l_coalgebra,
    is_r_algebra,
    iter_cleavages_left,
    iter_cleavages_right,
    lift_via_cleavage,
    mu_cleavage,
    retract_of_L_witness,
)
from .core import (
    ArrowSquare,
    ComonadDef,
    FunctorDef,
    compose,
    copair,
    coproduct,
    identity,
    identity_functor,
    iter_homs,
    iter_squares,
    limits,
    solve_homs,
)
from .errors import (
    BoundaryMismatch,
    DomainMismatch,
    EncodingError,
    FinAWFSError,
    HomSetTooLarge,
    NonCommutingSquare,
    NotAnLMap,
    UnsupportedCategory,
    UnsupportedRing,
)
from .factor import AWFS_LAWS, E, Factorization, check_awfs_laws, factorize, find_p_section
from .universe import ClassSpec, Universe, empty_class, explicit_class

__version__ = "0.1.0"

__all__ = [
    "AWFS_LAWS",
    "ArrowSquare",
    "BoundaryMismatch",
    "ClassSpec",
    "ComonadDef",
    "ComparisonReport",
    "DomainMismatch",
    "E",
    "EncodingError",
    "Factorization",
    "FinAWFSError",
    "FunctorDef",
    "HomSetTooLarge",
    "LeftCleavage",
    "NonCommutingSquare",
    "NotAnLMap",
    "RetractWitness",
    "RightCleavage",
    "Universe",
    "UnsupportedCategory",
    "UnsupportedRing",
    "check_awfs_laws",
    "cleavage_from_retract",
    "compose",
    "compose_cloven",
    "copair",
    "coproduct",
    "delta_cleavage",
    "empty_class",
    "eq12_compare",
    "exists_l_membership",
    "explicit_class",
    "extend_cleavage",
    "factorize",
    "find_cleavage_left",
    "find_cleavage_right",
    "find_filler",
    "find_isomorphism",
    "find_p_section",
    "has_llp",
    "has_rlp",
    "identity",
    "identity_cleavage",
    "identity_functor",
    "is_cloven_morphism",
    "is_l_coalgebra",
    "is_r_algebra",
    "is_retract_of",
    "iter_cleavages_left",
    "iter_cleavages_right",
    "iter_homs",
    "iter_squares",
    "lift_via_cleavage",
    "limits",
    "mu_cleavage",
    "preimage_class",
    "retract_closure",
    "retract_of_L_witness",
    "solve_homs",
]
