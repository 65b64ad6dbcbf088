"""switchhom: homomorphisms of (n,m)-graphs under generalized switch."""

__version__ = "0.1.0"

from .errors import (
    ContractError,
    ResourceLimitError,
    SwitchHomError,
    TimeoutExceeded,
    ValidationError,
)
from .typeset import (
    Alphabet,
    SwitchGroup,
    TypePerm,
    bar,
    group_closure,
    is_abelian,
    is_consistent,
    is_lmw_style,
    is_switch_commutative,
    orbits,
    parse_group,
    format_group,
    subgroup_and_complement,
    subgroups,
    symmetric_group,
    trivial_group,
)
from .graph_core import (
    NMGraph,
    build_graph,
    disjoint_union,
    format_graph,
    induced_subgraph,
    is_forest,
    parse_graph,
    t_neighbors,
    to_dot,
)
from .switching import (
    RhoGraph,
    SwitchAssignment,
    apply_assignment,
    equivalence_class,
    rho,
    rho_factorization_check,
    sigma_switch,
)
from .hom_engine import (
    HomWitness,
    IsoWitness,
    compose_witnesses,
    gamma_core,
    gamma_hom,
    gamma_hom_brute_force,
    gamma_iso,
    gamma_iso_via_rho,
    plain_hom,
    plain_iso,
    verify_hom_witness,
    verify_iso_witness,
)
from .category import (
    AlgebraReport,
    CoproductResult,
    ProductGraph,
    UniversalPropertyReport,
    algebra_checks,
    coproduct,
    coproduct_mediating,
    product_e,
    product_gamma,
    universal_property_check,
)
from .chromatic import (
    ChromaticResult,
    OrbitSystem,
    build_forest_target,
    forest_bound,
    forest_hom,
    forest_theorem_check,
    gamma_chromatic,
    lower_bound_witness,
    orbit_system,
    random_forest,
    walecki_decomposition,
)
