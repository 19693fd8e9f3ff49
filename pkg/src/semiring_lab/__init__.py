"""Finite semirings, semimodules and the projectivity of their cyclic semimodules."""

from .catalog import catalog, construct, parse_spec
from .config import Config, get_config, load_config, set_config
from .congruences import (
    Congruence,
    CongruenceSet,
    all_congruences,
    bourne_congruence,
    chi,
    diamond_congruence,
    generated_congruence,
    theta_plus,
)
from .core import (
    ElementSubset,
    FiniteSemimodule,
    FiniteSemiring,
    PropertyReport,
    SemimoduleHom,
    classify,
    corner_semiring,
    direct_sum,
    distinguished_subset,
    matrix_semiring,
    opposite,
    quotient_by_congruence,
    regular_semimodule,
    validate_semimodule,
    validate_semiring,
)
from .enumeration import (
    CanonicalForm,
    are_isomorphic,
    canonical_form,
    enumerate_commutative_monoids,
    enumerate_semirings,
)
from .lattices import (
    FiniteLattice,
    endomorphism_semiring,
    enumerate_distributive_lattices,
    is_distributive,
    theorem59_condition2,
    theorem59_condition3,
    validate_lattice,
)
from .projectivity import (
    CpVerdict,
    colimit,
    cyclic_quotients,
    full_c_diagram,
    infinite_element,
    is_cp,
    is_projective,
    peirce_decompositions,
    prop42_witness,
    splitting_idempotent,
)
from .simpleness import ideals, is_congruence_simple, is_ideal_simple, is_simple

__version__ = "0.1.0"
