"""Linear-optics evolution of photonic states: forward, inverse and compiled to hardware."""

from .circuits import (
    BeamSplitter,
    ElementList,
    GainChannel,
    LossChannel,
    PhaseDiag,
    QuasiDecomposition,
    QuasiUnitaryMatrix,
    clements_decompose,
    embed_element,
    is_quasiunitary,
    quasi_decompose,
    reck_decompose,
    reconstruct,
)
from .errors import (
    ArgumentError,
    CapacityError,
    DegenerateMatrixError,
    DegenerateStateError,
    DimensionError,
    ParseError,
    PhotonLiftError,
    PreconditionError,
    UnsupportedElementError,
)
from .fock import (
    FockBasis,
    StateVector,
    basis,
    dimension,
    leading_terms,
    schmidt_rank_vector,
    state_in_basis,
    state_leading_fidelity,
    state_leading_terms,
    subspace_basis,
)
from .inverse import InverseResult, ToponogovReport, rand_image_unitary, s_from_u, toponogov
from .lift import (
    METHODS,
    EvolutionUnitary,
    ImageAlgebra,
    d_phi,
    evolve_state_heisenberg,
    image_algebra_basis,
    lift_hamiltonian,
    s_to_u,
    transition_amplitude,
    u_m_canonical_basis,
)
from .linalg import (
    exp_i_hermitian,
    frobenius_distance,
    haar_random_unitary,
    hs_inner,
    is_unitary,
    min_phase_distance,
    permanent_naive,
    permanent_ryser,
    principal_log_unitary,
    qft_matrix,
    random_complex_matrix,
    rotation_matrix,
)

__version__ = "0.1.0"
