"""Finite echeloned spaces: comparison-only distance structures, their
morphisms and canonical forms, dull-metric realizations, strong
amalgamation, the one-point-extension functor, generative models of the
universal homogeneous limit, and desk-scale partition search."""

from .amalgam import AmalgamResult, ChainAmalgam, amalgamate, chain_amalgam, jep
from .colgraph import (
    ColouredGraph,
    GeometricColouring,
    SimpleGraph,
    StarDemand,
    WitnessFailure,
    as_probability,
    check_star,
    from_coloured_graph,
    pair_index,
    rado_slice,
    random_coloured_graph,
    star_demand,
    to_coloured_graph,
    witness_failure_probability,
)
from .errors import (
    BudgetExceeded,
    CapExceeded,
    DemandError,
    EchelonError,
    MetricError,
    MorphismError,
    ValidationError,
)
from .katetov import (
    KatetovChain,
    KatetovSpace,
    Realization,
    chain_label_map,
    katetov_chain,
    katetov_map,
    katetov_space,
    one_point_extensions,
    realize_extension,
)
from .limit import (
    BackAndForthCertificate,
    Demand,
    DeterministicLimitModel,
    ExactLabel,
    LimitModel,
    OpenInterval,
    RandomLimitModel,
    back_and_forth,
    ensure_witness,
    limit_new,
    limit_points,
    limit_rank,
    sample_prefix,
)
from .metrize import (
    Metric,
    from_metric,
    is_dull,
    is_one_lipschitz,
    metrize_dull,
    one_lipschitz_not_homomorphism_example,
    validate_metric,
)
from .ramsey import (
    OrderedEchelonedSpace,
    OrderedEdgeColouredGraph,
    arrow_check,
    copy_set,
    graph_embeddings,
    ordered_embeddings,
    ordered_space_graph,
    phi_inverse,
    phi_translate,
    witness_search,
)
from .rationals import nth_rational, rational_between, rational_index, simplest_between
from .space import (
    CanonicalForm,
    EchelonedSpace,
    Subspace,
    are_isomorphic,
    canonical_form,
    embedding_rank_map,
    enumerate_embeddings,
    enumerate_spaces,
    from_rank_table,
    from_weights,
    homomorphism_rank_map,
    induced_subspace,
    is_embedding,
    is_homomorphism,
)

__version__ = "0.1.0"

__all__ = [
    "AmalgamResult",
    "BackAndForthCertificate",
    "BudgetExceeded",
    "CanonicalForm",
    "CapExceeded",
    "ChainAmalgam",
    "ColouredGraph",
    "Demand",
    "DemandError",
    "DeterministicLimitModel",
    "EchelonError",
    "EchelonedSpace",
    "ExactLabel",
    "GeometricColouring",
    "KatetovChain",
    "KatetovSpace",
    "LimitModel",
    "Metric",
    "MetricError",
    "MorphismError",
    "OpenInterval",
    "OrderedEchelonedSpace",
    "OrderedEdgeColouredGraph",
    "RandomLimitModel",
    "Realization",
    "SimpleGraph",
    "StarDemand",
    "Subspace",
    "ValidationError",
    "WitnessFailure",
    "amalgamate",
    "are_isomorphic",
    "arrow_check",
    "as_probability",
    "back_and_forth",
    "canonical_form",
    "chain_amalgam",
    "chain_label_map",
    "check_star",
    "copy_set",
    "embedding_rank_map",
    "ensure_witness",
    "enumerate_embeddings",
    "enumerate_spaces",
    "from_coloured_graph",
    "from_metric",
    "from_rank_table",
    "from_weights",
    "graph_embeddings",
    "homomorphism_rank_map",
    "induced_subspace",
    "is_dull",
    "is_embedding",
    "is_homomorphism",
    "is_one_lipschitz",
    "jep",
    "katetov_chain",
    "katetov_map",
    "katetov_space",
    "limit_new",
    "limit_points",
    "limit_rank",
    "metrize_dull",
    "nth_rational",
    "one_lipschitz_not_homomorphism_example",
    "one_point_extensions",
    "ordered_embeddings",
    "ordered_space_graph",
    "pair_index",
    "phi_inverse",
    "phi_translate",
    "rado_slice",
    "random_coloured_graph",
    "rational_between",
    "rational_index",
    "realize_extension",
    "sample_prefix",
    "simplest_between",
    "star_demand",
    "to_coloured_graph",
    "validate_metric",
    "witness_failure_probability",
    "witness_search",
]
