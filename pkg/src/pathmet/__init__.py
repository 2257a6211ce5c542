"""Consistent path systems on finite graphs: metrizability decisions with
exact certificates, exhaustive enumeration, constructive metrizers, and
forbidden-topological-minor screening."""

from .errors import PathmetError
from .graph import (
    Graph,
    SubdivisionWitness,
    format_graph,
    parse_graph,
    biconnected_components,
    contains_subdivision,
    contract_edge,
    is_outerplanar,
    is_planar,
    subdivide_edge,
    suppress_degree2,
    suspended_paths,
    vertex_connectivity,
)
from .systems import (
    CrossingFunction,
    PartialPathSystem,
    PathSystem,
    TreeSystem,
    format_path_system,
    parse_path_system,
    canonical_odd_system,
    classify_cycle_system,
    crossing_function_of,
    extend_neighborly,
    induce_from_weights,
    is_consistent,
    is_consistent_partial,
    persistent_edges,
    quotient,
    restricts_to,
    system_of_crossing,
    to_path_system,
    to_tree_system,
)
from .enumeration import count_consistent_systems, enumerate_consistent_systems
from .metrize import (
    Certificate,
    CertLine,
    Verdict,
    Violation,
    WeightFunction,
    format_certificate,
    format_weights,
    parse_certificate,
    parse_weights,
    build_derived_system,
    decide_metrizable,
    lift_quotient_weights,
    lift_suspended_path,
    metrize_cycle,
    metrize_outerplanar,
    perturbation_radius,
    separation_oracle,
    verify_certificate,
    verify_weights,
)
from .catalog import (
    Budget,
    CatalogEntry,
    GraphVerdict,
    catalog,
    decide_graph,
    kn2_family_check,
    screen_catalog,
    screen_structural,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
