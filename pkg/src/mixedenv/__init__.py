"""Single-qubit channels simulated by a one-qubit mixed-state environment."""

from .canonical_unitary import (
    BellPhases,
    CanonicalAngles,
    bell_diagonal_unitary,
    canonical_unitary,
    is_unitary,
    phases_to_angles,
    sandwich,
)
from .channel_map import (
    AffineMap,
    ChannelParams,
    analytic_affine,
    apply_affine,
    apply_channel,
    canonical_diagonal,
    choi_matrix,
    depolarizing_affine,
    extract_affine,
    is_completely_positive,
    is_zero_shift,
    partial_trace_env,
)
from .geometry import (
    DiagonalPoint,
    SimAngles,
    analytic_volume,
    cross_section,
    in_tetrahedron,
    invert_to_angles,
    is_simulable,
    mc_volume_fraction,
    point_from_angles,
    two_pauli_simulable,
)
from .states import EnvironmentParams, PureStateAngles, bloch_to_density, density_to_bloch, probe_states

__version__ = "0.1.0"
