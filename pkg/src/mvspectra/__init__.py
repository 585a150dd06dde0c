"""Finite MV-algebras, their dual spaces, and sheaf representations."""

from .chang import ChangAlgebra, ChangFilter, ChangIdeal, ChangSpace
from .errors import (
    AlgebraError,
    CapExceeded,
    Error,
    LatticeError,
    NotDistributiveError,
    PosetError,
    SearchBudgetExceeded,
)
from .idealarith import (
    is_lattice_filter,
    is_lattice_ideal,
    ominus_bar,
    oplus_bar,
)
from .lattice import (
    DualSpacePoint,
    FiniteDistLattice,
    FinitePoset,
    duality_roundtrip,
    enumerate_prime_ideals,
    lattice_from_downsets,
    stone_map,
)
from .mv import (
    MvAlgebra,
    algebra_from_json,
    algebra_to_json,
    check_axioms,
    enumerate_mv_ideals,
    enumerate_prime_mv_ideals,
    from_tables,
    ideal_generated,
    is_mv_ideal,
    lukasiewicz_chain,
    product,
    quotient,
)
from .sheaf import (
    BASE_MAXIMAL,
    BASE_PRIME,
    EtaleInstance,
    build_etale,
    check_property_p,
    crt_solve,
    crt_term,
    difference_tower,
    eta_check,
    germinal_ideal,
    global_sections,
    tower_sandwich,
)
from .spectrum import (
    MvDualSpace,
    WQuotient,
    build_dual_space,
    fiber,
    interpolate,
    involution,
    k_map,
    kaplansky_check,
    m_map,
    partial_plus,
    space_to_dot,
    space_to_json,
    w_quotient,
)
from .verify import CheckResult, SUITE_NAMES, run_suite

__all__ = [
    "AlgebraError",
    "BASE_MAXIMAL",
    "BASE_PRIME",
    "CapExceeded",
    "ChangAlgebra",
    "ChangFilter",
    "ChangIdeal",
    "ChangSpace",
    "CheckResult",
    "DualSpacePoint",
    "Error",
    "EtaleInstance",
    "FiniteDistLattice",
    "FinitePoset",
    "LatticeError",
    "MvAlgebra",
    "MvDualSpace",
    "NotDistributiveError",
    "PosetError",
    "SUITE_NAMES",
    "SearchBudgetExceeded",
    "WQuotient",
    "algebra_from_json",
    "algebra_to_json",
    "build_dual_space",
    "build_etale",
    "check_axioms",
    "check_property_p",
    "crt_solve",
    "crt_term",
    "difference_tower",
    "duality_roundtrip",
    "enumerate_mv_ideals",
    "enumerate_prime_ideals",
    "enumerate_prime_mv_ideals",
    "eta_check",
    "fiber",
    "from_tables",
    "germinal_ideal",
    "global_sections",
    "ideal_generated",
    "interpolate",
    "involution",
    "is_lattice_filter",
    "is_lattice_ideal",
    "is_mv_ideal",
    "k_map",
    "kaplansky_check",
    "lattice_from_downsets",
    "lukasiewicz_chain",
    "m_map",
    "ominus_bar",
    "oplus_bar",
    "partial_plus",
    "product",
    "quotient",
    "run_suite",
    "space_to_dot",
    "space_to_json",
    "stone_map",
    "tower_sandwich",
    "w_quotient",
]
