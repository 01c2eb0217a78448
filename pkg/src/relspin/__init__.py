"""Relativistic spin-1/2 qubits as sampled momentum-space wavepackets."""
from .errors import ConfigError, DegenerateError, FrameSingularity, NumericalError, RelspinError
from .minkowski import (
    Transform,
    boost,
    minkowski_dot,
    null_eigenvectors,
    rotation,
    sl2c_to_lorentz,
    standard_boost,
    wigner_angle_oracle,
    wigner_rotation,
)
from .wavepacket import GridSpec, WavePacket, apply_spin_unitary, boost_state, gaussian_packet, helicity_probabilities
from .polarization import (
    Canonical,
    Custom,
    Helicity,
    PauliLubanski,
    ReducedDensity,
    adapted_frame,
    channel_defect,
    channel_matrix,
    entropy,
    frame_basis,
    gauge_shift,
    measure,
    pl_matrix,
    reduced_density,
)
from .entanglement import TwoParticleState, bell_packet, boost_two, negativity, reduced_two_qubit

__version__ = "0.1.0"
