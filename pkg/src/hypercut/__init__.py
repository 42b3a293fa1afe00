"""Exact verification toolkit for balanced-cut properties of k-uniform
hypergraphs: transversal-matrix ranks, scheme spectra, planted
counterexample constructions, and the affine structure of fractional
solutions."""

__version__ = "0.1.0"

from .combinat import (
    BalancedPartition,
    KSubset,
    binomial,
    enumerate_partitions,
    is_transversal,
    ksubset_rank,
    ksubset_unrank,
    partition_count,
)
from .linalg import (
    ExactMatrix,
    InfeasibilityWitness,
    SolutionSpace,
    affine_rank,
    exact_rank,
    in_affine_span,
    read_matrix,
    solve_affine,
    write_matrix,
)
from .intersection import (
    RankReport,
    build_A,
    build_B,
    predicted_rank,
    verify_rank_theorem,
)
from .scheme import (
    SchemeSpectrum,
    alpha,
    alpha_star,
    build_W,
    count_good_functions,
    eigenvalue_p,
    gram_spectrum,
    leading_coefficient,
    multiplicity,
    verify_gram_decomposition,
)
from .hypergraphs import (
    CutSpec,
    TypeZVector,
    WeightedHypergraph,
    check_D1,
    check_P_alpha,
    cut_weight,
    edge_weight_within,
    exact_ckp_weights,
    inclusion_exclusion_cut,
    monomial_coefficients,
    read_hypergraph,
    sample_ckp,
    sample_gnp,
    transversal_weight,
    type_z_density,
    write_hypergraph,
)
from .structure import (
    DensityVector,
    SolutionVector,
    WeightedGraph,
    cut_norm,
    cut_norm_lower_bound,
    delta_closeness,
    density_vector,
    graph_from_hypergraph,
    is_Pstar_solution,
    make_u,
    make_v,
    quotient_graph,
    read_graph,
    solution_space,
    verify_structure_theorem,
    write_graph,
)
