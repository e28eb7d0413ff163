"""treepack: spanning-tree packing, graph strength, spectra, and certified
decisions for tree-packing-plus-spare-forest properties."""

__version__ = "0.1.0"

from .graphs import (
    Graph,
    GraphError,
    GraphFormatError,
    VertexPartition,
    build_B,
    build_G_family,
    build_graph,
    complete,
    complete_bipartite,
    components,
    cross_edge_count,
    delete_edges,
    disjoint_union,
    fixture_h1,
    fixture_h2,
    format_edge_list,
    generate,
    induced_subgraph,
    is_connected,
    is_forest,
    max_spanning_forest,
    min_degree,
    parse_edge_list,
    petersen,
    read_graph,
    write_graph,
)
from .spectral import (
    Spectrum,
    a_alpha_matrix,
    adjacency_matrix,
    check_interlacing,
    eigenvalues_sym,
    hong_nikiforov_bound,
    lam,
    lam_alpha,
    quotient_lambda2_2part,
    quotient_matrix,
    quotient_spectrum,
    spectrum,
    spectrum_alpha,
)
from .packing import (
    ForestDecomposition,
    PartitionCertificate,
    max_forest_union,
    nu_f_bounds,
    nu_f_exact,
    partition_ratio,
    tau,
    tau_at_least,
    verify_decomposition,
)
from .property_p import (
    CERTIFIED,
    REFUTED,
    UNKNOWN,
    PQuery,
    PVerdict,
    certify_p,
    check_p,
    refute_by_bipartition_budget,
    refute_by_counting,
    refute_exhaustive,
    sufficient_by_nuf,
    verify_certificate,
)
from .theorems import (
    BRecognition,
    TheoremReport,
    ValidationReport,
    eval_t16,
    eval_t17,
    eval_t41,
    random_validation,
    recognize_B,
    reproduce_reference_values,
)

__all__ = [name for name in dir() if not name.startswith("_")]
