"""Two-particle spin-momentum states and their reduced two-qubit entanglement."""
from dataclasses import dataclass
import math

import numpy as np

from .linalg import weighted_gram
from .minkowski import energy, wigner_rotation
from .polarization import Canonical, check_density
from .wavepacket import GridSpec

BELL_PHI_PLUS = np.array([[1, 0], [0, 1]], dtype=complex) / math.sqrt(2)


@dataclass(frozen=True, eq=False)
class TwoParticleState:
    """Samples ``(p1, p2, w, A)`` with ``A[s1, s2]`` the spin amplitude."""

    masses: tuple
    momenta1: np.ndarray
    momenta2: np.ndarray
    weights: np.ndarray
    amplitudes: np.ndarray

    def __len__(self):
        return len(self.weights)

    def norm2(self):
        return math.fsum(self.weights * np.sum(np.abs(self.amplitudes) ** 2, axis=(1, 2)))


def bell_packet(mass, center1, center2, width, grid=GridSpec(7), spin=BELL_PHI_PLUS):
    """Product Gaussian envelopes times a fixed two-qubit spin state.

    The default spin part is ``(|up up> + |down down>) / sqrt(2)``.
    """
    if not width > 0:
        raise ValueError(f"width must be positive, got {width!r}")
    spin = np.asarray(spin, dtype=complex)
    if spin.shape != (2, 2) or not np.any(spin):
        raise ValueError("spin amplitude must be a nonzero 2x2 array")

    def one(center):
        p, cell = grid.momenta(center, width)
        w = cell / (2.0 * energy(p, mass))
        g = np.exp(-np.sum((p - np.asarray(center, dtype=float)) ** 2, axis=-1) / (4 * width ** 2))
        return p, w, g

    p1, w1, g1 = one(center1)
    p2, w2, g2 = one(center2)
    n1, n2 = len(p1), len(p2)
    i1, i2 = np.repeat(np.arange(n1), n2), np.tile(np.arange(n2), n1)
    weights = w1[i1] * w2[i2]
    amps = (g1[i1] * g2[i2])[:, None, None] * spin
    state = TwoParticleState((float(mass), float(mass)), p1[i1], p2[i2], weights, amps)
    return _scaled(state, 1.0 / math.sqrt(state.norm2()))


def _scaled(state, factor):
    return TwoParticleState(state.masses, state.momenta1, state.momenta2,
                            state.weights, state.amplitudes * factor)


def boost_two(state, transform):
    """Boost both particles: ``A -> W(L, p1) A W(L, p2)^T``."""
    m1, m2 = state.masses
    w1 = wigner_rotation(transform, state.momenta1, m1)
    w2 = wigner_rotation(transform, state.momenta2, m2)
    return TwoParticleState(
        state.masses,
        transform.apply_momentum(state.momenta1, m1),
        transform.apply_momentum(state.momenta2, m2),
        state.weights,
        w1 @ state.amplitudes @ np.swapaxes(w2, -1, -2),
    )


def reduced_two_qubit(state, frame1=Canonical(), frame2=Canonical()):
    """4x4 spin density matrix, basis order ``|r1 r2>`` with r = (+, -)."""
    m1, m2 = state.masses
    u1 = frame1.basis(state.momenta1, m1)
    u2 = frame2.basis(state.momenta2, m2)
    # a = U1^dagger A conj(U2), i.e. (U1^dagger x U2^dagger) applied to vec(A)
    a = np.conj(np.swapaxes(u1, -1, -2)) @ state.amplitudes @ np.conj(u2)
    a = a.reshape(len(state), 4)
    rho = weighted_gram(state.weights, a)
    check_density(rho)
    return rho


def partial_transpose(rho):
    """Transpose over the second qubit."""
    r = np.asarray(rho).reshape(2, 2, 2, 2)
    return r.transpose(0, 3, 2, 1).reshape(4, 4)


def negativity(rho):
    """Sum of magnitudes of the negative eigenvalues of the partial transpose."""
    pt = partial_transpose(rho)
    ev = np.linalg.eigvalsh(0.5 * (pt + np.conj(pt.T)))
    return float(-np.sum(ev[ev < 0]))
