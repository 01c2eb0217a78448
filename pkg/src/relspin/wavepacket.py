"""Sampled momentum-space wavepackets of a massive spin-1/2 particle.

A state is an ensemble of samples ``(p_i, w_i, chi_i)``: momenta on a common
mass shell, invariant-measure cell weights ``w_i ~ d^3p / 2E`` and spin
amplitudes in the canonical (Wigner) basis.  Integrals over ``dGamma(p)``
are weighted sums over the samples.  Boosts move the samples instead of
re-gridding, so the weights never change.
"""
from dataclasses import dataclass
import math

import numpy as np

from .errors import NumericalError
from .linalg import dagger, sigma_dot, unitarity_defect
from .minkowski import energy, wigner_rotation


@dataclass(frozen=True)
class GridSpec:
    """Cubic momentum grid: ``points`` per axis spanning ``center +- span * width``."""

    points: int = 21
    span: float = 4.0

    def __post_init__(self):
        if int(self.points) != self.points or self.points < 3 or self.points % 2 == 0:
            raise ValueError(f"grid points must be an odd integer >= 3, got {self.points!r}")
        if not (self.span > 0 and math.isfinite(self.span)):
            raise ValueError(f"grid span must be positive, got {self.span!r}")

    def axis(self, center, width):
        return center + np.linspace(-self.span * width, self.span * width, self.points)

    def momenta(self, center, width):
        """Grid momenta of shape ``(points**3, 3)`` and the cell volume."""
        center = np.asarray(center, dtype=float)
        axes = [self.axis(c, width) for c in center]
        mesh = np.meshgrid(*axes, indexing="ij")
        step = 2.0 * self.span * width / (self.points - 1)
        return np.stack([m.ravel() for m in mesh], axis=-1), step ** 3


@dataclass(frozen=True, eq=False)
class WavePacket:
    mass: float
    momenta: np.ndarray
    weights: np.ndarray
    spinors: np.ndarray

    def __post_init__(self):
        for name in ("momenta", "weights", "spinors"):
            arr = getattr(self, name)
            arr.setflags(write=False)
        if not self.mass > 0:
            raise ValueError(f"mass must be positive, got {self.mass!r}")
        if not np.all(self.weights > 0):
            raise ValueError("sample weights must be strictly positive")

    def __len__(self):
        return len(self.weights)

    @property
    def energies(self):
        return energy(self.momenta, self.mass)

    def norm2(self):
        return math.fsum(self.weights * np.sum(np.abs(self.spinors) ** 2, axis=-1))

    def normalized(self):
        return WavePacket(self.mass, self.momenta, self.weights,
                          self.spinors / math.sqrt(self.norm2()))


def gaussian_packet(mass, center, width, spinor, grid=GridSpec()):
    """Gaussian packet ``psi(p, s) ~ exp(-|p - p0|^2 / (4 width^2)) chi0(s)``.

    ``|psi|^2`` then has standard deviation ``width`` per axis.
    """
    if not width > 0:
        raise ValueError(f"width must be positive, got {width!r}")
    spinor = np.asarray(spinor, dtype=complex)
    if spinor.shape != (2,) or np.linalg.norm(spinor) == 0:
        raise ValueError("spinor must be a nonzero 2-vector")
    momenta, cell = grid.momenta(center, width)
    weights = cell / (2.0 * energy(momenta, mass))
    d2 = np.sum((momenta - np.asarray(center, dtype=float)) ** 2, axis=-1)
    envelope = np.exp(-d2 / (4.0 * width ** 2))
    state = WavePacket(float(mass), momenta, weights, envelope[:, None] * spinor)
    return state.normalized()


def boost_state(state, transform):
    """Act with a Lorentz transformation: ``(p, w, chi) -> (Lp, w, W(L, p) chi)``."""
    w = wigner_rotation(transform, state.momenta, state.mass)
    return WavePacket(
        state.mass,
        transform.apply_momentum(state.momenta, state.mass),
        state.weights,
        np.einsum("nij,nj->ni", w, state.spinors),
    )


def helicity_probabilities(state):
    """Probabilities ``(p+, p-)`` of helicity +1/2 and -1/2.

    Uses ``|<h+(p), chi>|^2 = (|chi|^2 + chi^dagger (sigma.p_hat) chi) / 2``,
    which needs no phase convention for the helicity eigenvectors.
    """
    pmag = np.linalg.norm(state.momenta, axis=-1)
    bad = pmag < 1e-12 * state.mass
    if np.any(bad):
        raise NumericalError(
            f"helicity undefined for {int(bad.sum())} sample(s) at rest"
        )
    chi = state.spinors
    proj = np.einsum("ni,nij,nj->n", np.conj(chi), sigma_dot(state.momenta / pmag[:, None]), chi).real
    n2 = np.sum(np.abs(chi) ** 2, axis=-1)
    plus = math.fsum(state.weights * 0.5 * (n2 + proj))
    minus = math.fsum(state.weights * 0.5 * (n2 - proj))
    total = plus + minus
    return plus / total, minus / total


def apply_spin_unitary(state, unitary):
    """Change spin basis ``chi -> U(p)^dagger chi``.

    ``unitary`` is a constant 2x2 matrix or a callable ``(momenta, mass)``
    returning one unitary per sample.
    """
    if callable(unitary):
        u = np.asarray(unitary(state.momenta, state.mass), dtype=complex)
    else:
        u = np.broadcast_to(np.asarray(unitary, dtype=complex), (len(state), 2, 2))
    if unitarity_defect(u) > 1e-10:
        raise ValueError("spin basis change is not unitary")
    return WavePacket(state.mass, state.momenta, state.weights,
                      np.einsum("nij,nj->ni", dagger(u), state.spinors))

