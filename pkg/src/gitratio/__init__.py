"""Exact torus GIT, type-A root data and the GIT integration ratio.

Everything is computed over the rationals: stability via the
Hilbert-Mumford criterion as exact linear programs, Weyl-group actions on
polynomial rings, fixed-point localization on flag varieties, and the ratio
``r_G`` for products of ``PGL(n)`` acting on projectivized matrix spaces.
"""

from .lattice import Cocharacter, RankMismatch, Weight, pair
from .localization import (
    FixedPointClass,
    beta_class,
    push_pull,
    sqrt_ctop_class,
    verify_antiinvariant_identity,
    verify_image_membership,
)
from .poly import Polynomial, QuotientRing, integrate, reduce
from .ratio import RatioReport, pm_n_state_census, ratio_for_group, ratio_pgl, ratio_product
from .rootsys import (
    ParabolicData,
    RootSystem,
    UnsupportedGroup,
    WeylElement,
    act,
    act_polynomial,
    borel,
    build_type_A,
    parabolic,
    parse_group,
)
from .stability import Classification, StateSet, Stability, classify, stabilizer_rank
from .statemodel import StateModel, eliminate_strictly_semistable

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "Cocharacter",
    "FixedPointClass",
    "ParabolicData",
    "Polynomial",
    "QuotientRing",
    "RankMismatch",
    "RatioReport",
    "RootSystem",
    "StateModel",
    "StateSet",
    "Stability",
    "UnsupportedGroup",
    "Weight",
    "WeylElement",
    "act",
    "act_polynomial",
    "beta_class",
    "borel",
    "build_type_A",
    "classify",
    "eliminate_strictly_semistable",
    "integrate",
    "pair",
    "parabolic",
    "parse_group",
    "pm_n_state_census",
    "push_pull",
    "ratio_for_group",
    "ratio_pgl",
    "ratio_product",
    "reduce",
    "sqrt_ctop_class",
    "stabilizer_rank",
    "verify_antiinvariant_identity",
    "verify_image_membership",
]
