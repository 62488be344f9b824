"""Distributive rotational lattices: construction, congruences and varieties."""

from .congruence import (
    ConLattice,
    Congruence,
    all_congruences,
    all_quotient_algebras,
    is_simple,
    is_subdirectly_irreducible,
    monolith,
    principal_congruence,
    quotient,
    stable_split_congruences,
    subdirect_factors,
)
from .lattice import (
    CapExceeded,
    FiniteLattice,
    LatticeError,
    PosetError,
    Poset,
    StructureReport,
    check_poset,
    downset_lattice,
    enumerate_posets,
    is_distributive,
    join_irreducibles,
    structure,
)
from .rotational import (
    AlgebraMap,
    RotationalLattice,
    all_subuniverses,
    direct_product,
    free_one_generated,
    generated_subalgebra,
    is_isomorphic,
    is_spanning,
    make_rotational,
    orbit,
    recognize_cube,
    rotational_cube,
    stable_elements,
)
from .varieties import (
    OrderIdeal,
    divisors_ideal,
    embed_cube,
    hs_cube,
    ideals_upto,
    satisfies_order_identity,
    si_members,
    validate_ideal,
    variety_contains_algebra,
    variety_leq,
)

__version__ = "0.1.0"
