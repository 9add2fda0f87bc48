"""Exact topology of configuration-space subspace arrangements.

Partition lattices and their order complexes, exact integer and mod-p
homology, arrangement rank bookkeeping (plain and equivariant), the
cohomology of elementary abelian groups with Euler-class certificates,
and bracket-system solvability verdicts, plus a CLI over all of it.
"""

from __future__ import annotations

from .arrangements import (
    ArrangementElement,
    ArrangementLattice,
    EquivariantGMReport,
    FullStabilizerScan,
    GMContribution,
    GMReport,
    OrbitContribution,
    WhitneyReport,
    config_rank_formula,
    configuration_arrangement,
    equivariant_gm,
    full_stabilizer_degree,
    full_stabilizer_scan,
    gm_cohomology,
    is_c_arrangement,
    whitney_e2,
)
from .complexes import (
    ChainComplex,
    ChainMap,
    SimplicialComplex,
    chain_complex,
    induced_chain_map,
    order_complex,
)
from .errors import DomainError, OrderError, ParseError, SizeLimitError, StructuralError
from .exact import (
    HomologySummary,
    IntegerSolveResult,
    SNFResult,
    SparseIntMatrix,
    homology,
    smith_normal_form,
    solve_integer,
)
from .group_cohomology import (
    FHIndexBoundsReport,
    FHIndexPrimeReport,
    GroupCohomologyElement,
    IdealDescriptor,
    SWExpansion,
    chisholm_bound,
    dual_sw_expansion,
    euler_class_zeta,
    euler_class_zeta_H,
    fh_index_bounds,
    fh_index_prime,
    gc_multiply,
    multinomial_mod2,
    poly_divides,
    restrict,
)
from .groups import (
    FiniteGroup,
    OrbitData,
    Permutation,
    group_from_generators,
    orbits_and_stabilizers,
    regular_embedding,
    regular_embedding_generators,
    vector_index,
)
from .modrep import (
    HomologyAction,
    JordanType,
    ZpModuleDescriptor,
    homology_action,
    is_in_FI_family_zp,
    jordan_type,
    partition_homology_descriptor,
    zp_module_descriptor,
)
from .obstruction import (
    ExistenceVerdict,
    IntegerSystem,
    SystemVerdict,
    builtin_system,
    integer_solvable,
    parse_bracket_system,
    serialize_system,
    symn_map_exists,
    zn_map_exists,
)
from .partitions import (
    Partition,
    PartitionLattice,
    bell_number,
    build_partition_lattice,
    iter_partitions,
    mobius,
)

__version__ = "0.1.0"

__all__ = [
    "ArrangementElement",
    "ArrangementLattice",
    "ChainComplex",
    "ChainMap",
    "DomainError",
    "EquivariantGMReport",
    "ExistenceVerdict",
    "FHIndexBoundsReport",
    "FHIndexPrimeReport",
    "FiniteGroup",
    "FullStabilizerScan",
    "GMContribution",
    "GMReport",
    "GroupCohomologyElement",
    "HomologyAction",
    "HomologySummary",
    "IdealDescriptor",
    "IntegerSolveResult",
    "IntegerSystem",
    "JordanType",
    "OrbitContribution",
    "OrbitData",
    "OrderError",
    "ParseError",
    "Partition",
    "PartitionLattice",
    "Permutation",
    "SNFResult",
    "SWExpansion",
    "SimplicialComplex",
    "SizeLimitError",
    "SparseIntMatrix",
    "StructuralError",
    "SystemVerdict",
    "WhitneyReport",
    "ZpModuleDescriptor",
    "bell_number",
    "build_partition_lattice",
    "builtin_system",
    "chain_complex",
    "chisholm_bound",
    "config_rank_formula",
    "configuration_arrangement",
    "dual_sw_expansion",
    "equivariant_gm",
    "euler_class_zeta",
    "euler_class_zeta_H",
    "fh_index_bounds",
    "fh_index_prime",
    "full_stabilizer_degree",
    "full_stabilizer_scan",
    "gc_multiply",
    "gm_cohomology",
    "group_from_generators",
    "homology",
    "homology_action",
    "induced_chain_map",
    "integer_solvable",
    "is_c_arrangement",
    "is_in_FI_family_zp",
    "iter_partitions",
    "jordan_type",
    "mobius",
    "multinomial_mod2",
    "orbits_and_stabilizers",
    "order_complex",
    "parse_bracket_system",
    "partition_homology_descriptor",
    "poly_divides",
    "regular_embedding",
    "regular_embedding_generators",
    "restrict",
    "serialize_system",
    "smith_normal_form",
    "solve_integer",
    "symn_map_exists",
    "vector_index",
    "whitney_e2",
    "zn_map_exists",
    "zp_module_descriptor",
]
