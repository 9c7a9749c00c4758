"""Entanglement measures of bipartite pure states and bounds on the negativity
of their superpositions."""

from .bounds import (
    BoundReport,
    fannes_concurrence_check,
    horn_check,
    mixture_identity_residual,
    n_tilde,
    sorted_eigenvalue_l1_check,
    theorem2_bounds,
    theorem3_upper,
)
from .linalg import Spectrum, hermitian_eigenvalues, singular_values, trace_norm
from .measures import (
    concurrence,
    concurrence_sq_from_spectrum,
    entropy_of_entanglement,
    negativity_pt,
    negativity_schmidt,
    partial_transpose_a,
    schmidt_rank,
    trace_distance,
)
from .states import (
    PureState,
    SchmidtData,
    SuperpositionSpec,
    bell,
    coefficient_matrix,
    epsilon_family,
    epsilon_family_spectrum,
    fidelity,
    is_biorthogonal,
    load_state,
    maximally_entangled,
    reduced_density_a,
    save_state,
    schmidt,
    superpose,
)

__version__ = "0.1.0"
