"""Density-operator simulation of qubit-ensemble teleportation.

A small numpy library covering the full pipeline: Bell-type projectors and
their algebra, assembly of the three-party state, sender preparations
(projective and general weight tensors, including the correction-free
automatic one), receiver corrections, two fidelity formulations with
Monte-Carlo averaging, and the comparison of one-sided versus two-sided
state-update conventions. A CLI (``ensemble-teleport``) exposes audits,
single sessions, and parameter sweeps.
"""

from .bell import (
    BELL_INDICES,
    bell_projector,
    bell_vector,
    matrix_unit,
    pauli,
    ppt_entangled,
)
from .conventions import (
    ConventionResult,
    compare_conventions,
    prepare_sandwich,
    sandwich_numerator,
)
from .fidelity import (
    AverageFidelity,
    FidelityReport,
    LazyFidelityMaximum,
    average_fidelity,
    fidelity_report,
    fidelity_trace,
    fidelity_vector,
    lazy_fidelity,
    maximize_lazy_fidelity,
    sample_mixed_uniform,
    sample_pure_uniform,
)
from .linalg import (
    LAYOUT_AB,
    LAYOUT_CA,
    LAYOUT_CAB,
    NonHermitianError,
    SubsystemLayout,
    adjoint,
    embed,
    hermitian_spectrum,
    matmul,
    partial_trace,
    partial_transpose,
    spectral_norm,
    tensor,
    trace,
)
from .protocol import (
    ClassicalMessage,
    CoefficientVector,
    PreparationTensor,
    SessionRecord,
    TotalStateDecomposition,
    TransformationMatrix,
    alice_prepare,
    automatic_preparation,
    bob_correct,
    coefficients_of,
    correction_unitary,
    decompose_total_state,
    effective_transformation,
    matrix_from_coefficients,
    preparation_from_bell,
    renormalize,
    resolve_preparation,
    run_session,
    total_state,
    transformation_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "BELL_INDICES",
    "LAYOUT_AB",
    "LAYOUT_CA",
    "LAYOUT_CAB",
    "AverageFidelity",
    "ClassicalMessage",
    "CoefficientVector",
    "ConventionResult",
    "FidelityReport",
    "LazyFidelityMaximum",
    "NonHermitianError",
    "PreparationTensor",
    "SessionRecord",
    "SubsystemLayout",
    "TotalStateDecomposition",
    "TransformationMatrix",
    "adjoint",
    "alice_prepare",
    "automatic_preparation",
    "average_fidelity",
    "bell_projector",
    "bell_vector",
    "bob_correct",
    "coefficients_of",
    "compare_conventions",
    "correction_unitary",
    "decompose_total_state",
    "effective_transformation",
    "embed",
    "fidelity_report",
    "fidelity_trace",
    "fidelity_vector",
    "hermitian_spectrum",
    "lazy_fidelity",
    "matmul",
    "matrix_from_coefficients",
    "matrix_unit",
    "maximize_lazy_fidelity",
    "partial_trace",
    "partial_transpose",
    "pauli",
    "ppt_entangled",
    "prepare_sandwich",
    "preparation_from_bell",
    "renormalize",
    "resolve_preparation",
    "run_session",
    "sample_mixed_uniform",
    "sample_pure_uniform",
    "sandwich_numerator",
    "spectral_norm",
    "tensor",
    "total_state",
    "trace",
    "transformation_matrix",
]
