"""Partial transposes of multipartite density matrices and the entanglement
functions built on them."""
from .core import (
    ContractViolation,
    DensityMatrix,
    DimensionSpec,
    NumericalError,
    StructuralError,
    Violation,
    flat_index,
    multi_index,
    validate_density,
)
from .entanglement import (
    EigClassification,
    HseReport,
    Verdict,
    classify_spectrum,
    hse,
    hse_cut_point,
    hse_of,
    log_negativity,
    log_negativity_of,
    negativity,
    negativity_of,
    ppt_verdict,
    simplex_projection_distance,
)
from .ptranspose import (
    partial_transpose,
    partial_transpose_3,
    partial_transpose_a,
    partial_transpose_b,
    transpose,
)
from .spectra import SpectralDecomposition, eig_hermitian, hs_norm, trace_norm_hermitian
from .states import bell_phi_plus, ghz, random_density, random_separable, werner

__version__ = "0.1.0"
