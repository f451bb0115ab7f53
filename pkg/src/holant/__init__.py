"""Exact and certified-approximate evaluation of edge-coloring sums.

Multigraphs carry local weight systems on color-count vectors; summing the
product of vertex weights over all edge colorings gives the central
quantity.  The package provides brute-force engines, a certified Taylor
scheme valid near the all-ones system, partition-indexed graph polynomials
(random-cluster and chromatic included), transfer matrices for cycles, and
a command-line front end.
"""

from .errors import (BudgetExceededError, DecompositionError, GraphFormatError,
                     HolantError, OutsideRegionError, RootFindingError)
from .graphs import (GraphFamilySpec, Multigraph, component_count,
                     connected_subsets, count_induced, disjoint_union,
                     edges_touching, generate, incident_multiset,
                     induced_subgraph, is_connected, isomorphic,
                     parse_edge_list, read_edge_list, write_edge_list)
from .models import (DEFAULT_MAX_DEGREE, EdgeColoringModel, RegionParams,
                     TensorAssignment, VertexModel, all_ones, apply_orthogonal,
                     load_model, model_from_predicate, perturbed_ones,
                     random_orthogonal, rank_one_model, save_model,
                     symmetric_decompose, values_in_region, vertex_to_edge)
from .exact import (ComplexPoly, RestrictedSpec, contract_network,
                    exact_partition, exact_poly_by_interpolation,
                    partition_vertex_model, poly_roots, restricted_partition)
from .approx import (ApproxCertificate, ZeroFreeConstants, ZeroFreeReport,
                     approx_partition, certified_radius,
                     cluster_log_derivatives, log_derivatives_from_p,
                     magnitude_lower_bound, q_derivative,
                     reconstruct_p_derivatives, sample_region_model,
                     taylor_error_bound, taylor_order, verify_zero_free,
                     zero_free_constants)
from .exptype import (ExpTypeSpec, chi_k_coefficients, chi_tutte,
                      chromatic_spec, estimate_root_radius, eval_exp_type,
                      exp_type_poly, qhat_derivative, tutte_direct,
                      tutte_spec)
from .limits import (ConvergenceReport, convergence_run, cycle_transfer_matrix,
                     cycle_transfer_pf, log_potential_check, normalized_pf,
                     transfer_log_growth)
from .partitions import bell_number, partitions_min_block, set_partitions, set_partitions_k

__version__ = "0.1.0"

__all__ = [
    "ApproxCertificate", "BudgetExceededError", "ComplexPoly",
    "ConvergenceReport", "DEFAULT_MAX_DEGREE", "DecompositionError",
    "EdgeColoringModel", "ExpTypeSpec", "GraphFamilySpec", "GraphFormatError",
    "HolantError", "Multigraph", "OutsideRegionError", "RegionParams",
    "RestrictedSpec", "RootFindingError", "TensorAssignment", "VertexModel",
    "ZeroFreeConstants", "ZeroFreeReport", "all_ones", "apply_orthogonal",
    "approx_partition", "bell_number", "certified_radius",
    "chi_k_coefficients", "chi_tutte", "chromatic_spec",
    "cluster_log_derivatives", "component_count", "connected_subsets",
    "contract_network", "convergence_run", "count_induced",
    "cycle_transfer_matrix", "cycle_transfer_pf", "disjoint_union",
    "edges_touching", "estimate_root_radius", "eval_exp_type",
    "exact_partition", "exact_poly_by_interpolation", "exp_type_poly",
    "generate", "incident_multiset", "induced_subgraph", "is_connected",
    "isomorphic", "load_model", "log_derivatives_from_p",
    "log_potential_check", "magnitude_lower_bound", "model_from_predicate",
    "normalized_pf", "parse_edge_list", "partition_vertex_model",
    "partitions_min_block", "perturbed_ones", "poly_roots", "q_derivative",
    "random_orthogonal", "rank_one_model", "read_edge_list",
    "reconstruct_p_derivatives", "restricted_partition", "sample_region_model",
    "save_model", "set_partitions", "set_partitions_k", "symmetric_decompose",
    "taylor_error_bound", "taylor_order", "transfer_log_growth", "tutte_direct",
    "tutte_spec", "values_in_region", "verify_zero_free", "vertex_to_edge",
    "write_edge_list", "zero_free_constants",
]
