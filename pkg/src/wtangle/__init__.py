"""Few-qubit simulator for teleportation and superdense coding with W-class states."""
from .entanglement import (
    EntanglementReport,
    SloccClass,
    analyze,
    concurrence_pure_cut,
    slocc_classify,
    three_tangle,
    von_neumann_entropy,
    wootters_concurrence,
)
from .protocols import (
    GHZ_CORRECTIONS,
    W_CORRECTIONS,
    DenseCodeTrace,
    InputQubit,
    Pauli,
    ProtocolError,
    Scheme,
    TeleportTrace,
    dense_code,
    fidelity,
    ghz_teleport,
    prototype_w_failure_demo,
    resource_accounting,
    sdc_decode,
    sdc_encode,
    teleport,
    w_teleport,
)
from .qcore import (
    DensityMatrix,
    MeasurementBasis,
    MeasurementOutcome,
    Operator,
    StateVector,
    apply_local,
    density,
    derive_seeds,
    hermitian_eigenvalues,
    hermitian_eigh,
    inner,
    make_rng,
    partial_trace,
    projective_measure,
    reduced,
    tensor,
)
from .states import (
    WParams,
    check_orthonormal,
    complete_basis,
    ghz_dense8_basis,
    ghz_teleport_basis,
    make_ghz,
    make_w1,
    make_w_n,
    make_w_prototype,
    w_teleport_basis,
)

__version__ = "0.1.0"
