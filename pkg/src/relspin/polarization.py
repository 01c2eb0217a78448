"""Spin observables, polarization frames and reduced spin density matrices.

A polarization frame assigns an orthonormal spin basis ``(u+, u-)`` to every
momentum.  Frames are evaluated as ``(n, 2, 2)`` unitaries whose columns are
``u+`` and ``u-`` expressed in the canonical basis.

Basis phases follow the half-angle convention around a pole axis ``c``
(``z`` unless a frame says otherwise): for a quantization direction ``b``
with polar angles ``(theta, phi)`` measured from ``c``,

    u+ = (cos(theta/2), e^{i phi} sin(theta/2))
    u- = (-e^{-i phi} sin(theta/2), cos(theta/2))

which is singular only at ``b = -c``.
"""
from dataclasses import dataclass, field
import math
from typing import Callable

import numpy as np

from .errors import DegenerateError, FrameSingularity, NumericalError
from .linalg import dagger, sigma_dot, unitarity_defect, weighted_gram
from .minkowski import (
    four_momentum,
    inverse_standard_boost_apply,
    minkowski_dot,
    null_eigenvectors,
    wigner_rotation,
)

POLE_TOLERANCE = 1e-6
Z_AXIS = np.array([0.0, 0.0, 1.0])


def half_angle_basis(direction):
    """Half-angle basis unitaries for unit directions about the ``z`` pole."""
    d = np.atleast_2d(np.asarray(direction, dtype=float))
    theta = np.arccos(np.clip(d[:, 2], -1.0, 1.0))
    phi = np.arctan2(d[:, 1], d[:, 0])
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    u = np.empty((len(d), 2, 2), dtype=complex)
    u[:, 0, 0] = c
    u[:, 1, 0] = np.exp(1j * phi) * s
    u[:, 0, 1] = -np.exp(-1j * phi) * s
    u[:, 1, 1] = c
    return u


def _pole_rotation(pole):
    """An SU(2) element carrying ``z`` onto ``pole``."""
    pole = np.asarray(pole, dtype=float)
    if pole[2] < -1.0 + 1e-12:
        return np.array([[0, -1j], [-1j, 0]])  # pi about x
    return half_angle_basis(pole)[0]


def _oriented_basis(directions, pole, momenta, what):
    """Half-angle bases for unit ``directions`` about ``pole``, with pole checks."""
    rot = _pole_rotation(pole)
    # coordinates of each direction in the frame where the pole is z
    local = np.einsum("ij,...j->...i", _rotation_matrix(rot).T, directions)
    singular = local[:, 2] < math.cos(math.pi - POLE_TOLERANCE)
    if np.any(singular):
        raise FrameSingularity(f"{what}: quantization axis at the singular pole",
                               momenta[singular])
    return rot @ half_angle_basis(local)


def _rotation_matrix(su2):
    """3x3 rotation of an SU(2) element (rows/cols: x, y, z)."""
    s = np.stack([sigma_dot(e) for e in np.eye(3)])
    return 0.5 * np.einsum("iab,bc,jcd,da->ij", s, su2, s, dagger(su2)).real


class Canonical:
    """Constant sigma_z basis: the canonical reduction."""

    def basis(self, momenta, mass):
        return np.broadcast_to(np.eye(2, dtype=complex), (len(momenta), 2, 2))

    def __repr__(self):
        return "Canonical()"


class Helicity:
    """Eigenvectors of sigma . p_hat."""

    def basis(self, momenta, mass):
        momenta = np.asarray(momenta, dtype=float)
        pmag = np.linalg.norm(momenta, axis=-1)
        at_rest = pmag <= 1e-12 * mass
        if np.any(at_rest):
            raise FrameSingularity("helicity frame: momentum too small", momenta[at_rest])
        return _oriented_basis(momenta / pmag[:, None], Z_AXIS, momenta, "helicity frame")

    def __repr__(self):
        return "Helicity()"


@dataclass(frozen=True, eq=False)
class PauliLubanski:
    """Eigenbasis of ``t . W`` at each momentum.

    ``pole`` moves the singular point of the phase convention to ``-pole``.
    """

    t: np.ndarray
    pole: np.ndarray = field(default_factory=lambda: Z_AXIS.copy())

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        pole = np.asarray(self.pole, dtype=float)
        if t.shape != (4,) or not np.any(t):
            raise ValueError("Pauli-Lubanski direction must be a nonzero four-vector")
        if abs(np.linalg.norm(pole) - 1.0) > 1e-12:
            raise ValueError("frame pole must be a unit 3-vector")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "pole", pole)

    def basis(self, momenta, mass):
        momenta = np.asarray(momenta, dtype=float)
        b = spin_axis(self.t, momenta, mass)
        bmag = np.linalg.norm(b, axis=-1)
        scale = np.linalg.norm(self.t) * np.maximum(1.0, four_momentum(momenta, mass)[..., 0] / mass)
        flat = bmag <= 1e-12 * scale
        if np.any(flat):
            raise FrameSingularity("t.W is degenerate (t parallel to p)", momenta[flat])
        return _oriented_basis(b / bmag[:, None], self.pole, momenta, "Pauli-Lubanski frame")

    def __repr__(self):
        return f"PauliLubanski(t={self.t.tolist()}, pole={self.pole.tolist()})"


@dataclass(frozen=True)
class Custom:
    """Any rule ``(momenta, mass) -> (n, 2, 2)`` unitaries."""

    rule: Callable

    def basis(self, momenta, mass):
        u = np.asarray(self.rule(np.asarray(momenta, dtype=float), mass), dtype=complex)
        u = np.broadcast_to(u, (len(momenta), 2, 2))
        if unitarity_defect(u) > 1e-10:
            raise NumericalError("custom frame rule returned a non-unitary basis")
        return u


def frame_basis(frame, p, mass):
    """Return ``(u+, u-)`` of ``frame`` at a single momentum ``p``."""
    u = frame.basis(np.atleast_2d(np.asarray(p, dtype=float)), mass)[0]
    return u[:, 0].copy(), u[:, 1].copy()


def spin_axis(t, p, mass):
    """``b = -spatial(L(p)^-1 t)``, so that ``t.W`` acts as ``(m/2) sigma.b``."""
    return -inverse_standard_boost_apply(t, p, mass)[..., 1:]


def pl_matrix(t, p, mass):
    """Restriction of ``t_mu W^mu`` to the spin space at momentum ``p``."""
    return 0.5 * mass * sigma_dot(spin_axis(t, p, mass))


def gauge_shift(t, p, mass):
    """``t' = t + theta P`` with ``theta = -(t.P)/m^2``, so that ``t'.P = 0``."""
    t = np.asarray(t, dtype=float)
    big_p = four_momentum(p, mass)
    theta = -minkowski_dot(t, big_p) / mass ** 2
    shifted = t + np.asarray(theta)[..., None] * big_p
    scale = np.linalg.norm(t, axis=-1) + np.abs(theta) * np.linalg.norm(big_p, axis=-1)
    if np.any(np.linalg.norm(shifted, axis=-1) <= 1e-12 * scale):
        raise DegenerateError("degenerate gauge shift: t is proportional to the momentum")
    return shifted


def adapted_frame(transform):
    """Pauli-Lubanski frame along a null eigenvector of ``transform``.

    Picks the eigenvector with the smallest eigenvalue, ``(1, -n)`` for a
    boost along ``n``; ties go to the most negative ``(t3, t2, t1)``.  The
    phase pole is ``-t_spatial``, where slow momenta sit.
    """
    vecs = null_eigenvectors(transform)
    t, _ = min(vecs, key=lambda tv: (round(tv[1], 12), tv[0][3], tv[0][2], tv[0][1]))
    pole = -t[1:] / np.linalg.norm(t[1:])
    return PauliLubanski(t, pole)


@dataclass(frozen=True, eq=False)
class ReducedDensity:
    matrix: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.matrix, dtype=complex)
        check_density(rho)
        object.__setattr__(self, "matrix", rho)

    def eigenvalues(self):
        return np.linalg.eigvalsh(0.5 * (self.matrix + dagger(self.matrix)))


def check_density(rho, tol=1e-10):
    """Raise :class:`NumericalError` unless ``rho`` is a valid density matrix."""
    herm = np.max(np.abs(rho - dagger(rho)))
    if herm > tol:
        raise NumericalError(f"density matrix not Hermitian (defect {herm:.3g})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol:
        raise NumericalError(f"density matrix trace {tr.real:.17g} != 1")
    ev = np.linalg.eigvalsh(0.5 * (rho + dagger(rho)))
    if ev[0] < -tol or ev[-1] > 1 + tol:
        raise NumericalError(f"density matrix eigenvalues {ev} outside [0, 1]")


def frame_amplitudes(state, frame):
    """Amplitudes ``a_i(r) = <u_r(p_i), chi_i>`` in the given frame."""
    u = frame.basis(state.momenta, state.mass)
    return np.einsum("nji,nj->ni", np.conj(u), state.spinors)


def reduced_density(state, frame=Canonical()):
    a = frame_amplitudes(state, frame)
    return ReducedDensity(weighted_gram(state.weights, a))


def entropy(rho):
    """Von Neumann entropy in bits."""
    matrix = getattr(rho, "matrix", rho)
    ev = np.linalg.eigvalsh(0.5 * (matrix + dagger(matrix)))
    if ev[0] < -1e-8 or ev[-1] > 1 + 1e-8:
        raise NumericalError(f"eigenvalues {ev} too far outside [0, 1]")
    ev = np.clip(ev, 0.0, 1.0)
    ev = ev[ev > 0]
    return float(max(0.0, -np.sum(ev * np.log2(ev))))


def measure(rho, projector):
    """Probability ``tr(rho pi)`` for an orthogonal projector ``pi``."""
    pi = np.asarray(projector, dtype=complex)
    if np.max(np.abs(pi @ pi - pi)) > 1e-10 or np.max(np.abs(pi - dagger(pi))) > 1e-10:
        raise ValueError("not an orthogonal projector")
    matrix = getattr(rho, "matrix", rho)
    return float(np.trace(matrix @ pi).real)


def channel_matrix(transform, frame, p, mass):
    """Spin channel ``D(p) = U(Lp)^dagger W(L, p) U(p)`` in the frame's basis.

    Batched over ``p`` of shape ``(n, 3)``; a single 3-vector gives one 2x2.
    """
    p = np.asarray(p, dtype=float)
    single = p.ndim == 1
    p = np.atleast_2d(p)
    u_in = frame.basis(p, mass)
    u_out = frame.basis(transform.apply_momentum(p, mass), mass)
    d = dagger(u_out) @ wigner_rotation(transform, p, mass) @ u_in
    return d[0] if single else d


def _remove_global_phase(d):
    flat = d.reshape(len(d), -1)
    mag = np.abs(flat)
    # first entry within rounding of the largest, so ties resolve the same way
    ref = np.argmax(mag >= mag.max(axis=1, keepdims=True) * (1 - 1e-9), axis=1)
    phase = flat[np.arange(len(d)), ref]
    return flat * (np.conj(phase) / np.abs(phase))[:, None]


def _diameter(points, chunk=512):
    """Largest pairwise Euclidean distance among rows of a complex array."""
    centred = points - points[0]
    x = np.concatenate([centred.real, centred.imag], axis=1)
    sq = np.sum(x * x, axis=1)
    best, pair = -1.0, (0, 0)
    for start in range(0, len(x), chunk):
        block = x[start:start + chunk]
        d2 = sq[start:start + chunk, None] + sq[None, :] - 2.0 * (block @ x.T)
        i, j = np.unravel_index(np.argmax(d2), d2.shape)
        if d2[i, j] > best:
            best, pair = d2[i, j], (start + i, j)
    # recompute the winning pair directly for a clean value
    return float(np.linalg.norm(points[pair[0]] - points[pair[1]]))


def channel_defect(transform, frame, momenta, mass):
    """``(offdiag, spread)`` of the channel matrices over a set of momenta.

    ``offdiag`` is the largest off-diagonal magnitude; ``spread`` the largest
    Frobenius distance between two channel matrices after each is stripped of
    a global phase.
    """
    momenta = np.atleast_2d(np.asarray(momenta, dtype=float))
    if len(momenta) < 2:
        raise ValueError("channel_defect needs at least two momenta")
    d = channel_matrix(transform, frame, momenta, mass)
    offdiag = float(max(np.max(np.abs(d[:, 0, 1])), np.max(np.abs(d[:, 1, 0]))))
    return offdiag, _diameter(_remove_global_phase(d))
