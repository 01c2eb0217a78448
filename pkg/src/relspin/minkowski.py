"""Minkowski geometry: four-vectors, Lorentz transformations, Wigner rotations.

Conventions: metric signature (+, -, -, -), active transformations and
natural units.  A four-vector is a float array of shape ``(..., 4)``, a
spinor map a complex array of shape ``(..., 2, 2)``.  The covering map sends
``A`` in SL(2, C) to the Lorentz matrix of ``X -> A X A^dagger`` where
``X = x0 + x.sigma``.
"""
from typing import NamedTuple

import numpy as np

from .errors import DegenerateError
from .linalg import IDENTITY2, SIGMA4, dagger, rotation_angle, sigma_dot

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])


def minkowski_dot(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return a[..., 0] * b[..., 0] - np.sum(a[..., 1:] * b[..., 1:], axis=-1)


def energy(p, mass):
    p = np.asarray(p, dtype=float)
    return np.sqrt(np.sum(p * p, axis=-1) + mass * mass)


def four_momentum(p, mass):
    p = np.asarray(p, dtype=float)
    return np.concatenate([energy(p, mass)[..., None], p], axis=-1)


class Transform(NamedTuple):
    """A Lorentz transformation carried in both representations.

    ``matrix`` is the 4x4 vector representation, ``spinor`` one of its two
    SL(2, C) preimages.  Unpacks as ``(matrix, spinor)``.
    """

    matrix: np.ndarray
    spinor: np.ndarray

    @classmethod
    def identity(cls):
        return cls(np.eye(4), IDENTITY2.copy())

    def __matmul__(self, other):
        if not isinstance(other, Transform):
            return NotImplemented
        return Transform(self.matrix @ other.matrix, self.spinor @ other.spinor)

    def inverse(self):
        # g L^T g is exact for Lorentz matrices; SL(2, C) inverse via the adjugate
        a = self.spinor
        inv = np.array([[a[1, 1], -a[0, 1]], [-a[1, 0], a[0, 0]]])
        return Transform(METRIC @ self.matrix.T @ METRIC, inv)

    def apply(self, x):
        return np.asarray(x, dtype=float) @ self.matrix.T

    def apply_momentum(self, p, mass):
        """Transform on-shell spatial momenta, returning spatial momenta."""
        return self.apply(four_momentum(p, mass))[..., 1:]


def _unit_axis(axis):
    axis = np.asarray(axis, dtype=float)
    if axis.shape != (3,) or not np.all(np.isfinite(axis)):
        raise ValueError(f"axis must be a finite 3-vector, got {axis!r}")
    if abs(np.linalg.norm(axis) - 1.0) > 1e-12:
        raise ValueError(f"axis must be a unit vector, |axis| = {np.linalg.norm(axis)!r}")
    return axis


def boost(axis, rapidity):
    """Pure boost of the given rapidity along a unit axis."""
    n = _unit_axis(axis)
    ch, sh = np.cosh(rapidity), np.sinh(rapidity)
    lam = np.eye(4)
    lam[0, 0] = ch
    lam[0, 1:] = lam[1:, 0] = sh * n
    lam[1:, 1:] += (ch - 1.0) * np.outer(n, n)
    spinor = np.cosh(rapidity / 2) * IDENTITY2 + np.sinh(rapidity / 2) * sigma_dot(n)
    return Transform(lam, spinor)


def rotation(axis, angle):
    """Right-handed rotation by ``angle`` about a unit axis."""
    n = _unit_axis(axis)
    c, s = np.cos(angle), np.sin(angle)
    cross = np.array([[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]])
    lam = np.eye(4)
    lam[1:, 1:] = c * np.eye(3) + (1.0 - c) * np.outer(n, n) + s * cross
    spinor = np.cos(angle / 2) * IDENTITY2 - 1j * np.sin(angle / 2) * sigma_dot(n)
    return Transform(lam, spinor)


def sl2c_to_lorentz(a):
    """Image of an SL(2, C) element under the covering map."""
    a = np.asarray(a, dtype=complex)
    det = np.linalg.det(a)
    if abs(det - 1.0) > 1e-10:
        raise ValueError(f"spinor map is not in SL(2, C): det = {det!r}")
    lam = 0.5 * np.einsum("mij,jk,nkl,li->mn", SIGMA4, a, SIGMA4, dagger(a))
    return lam.real


def from_spinor(a):
    """Build a :class:`Transform` from its spinor part alone."""
    a = np.asarray(a, dtype=complex)
    return Transform(sl2c_to_lorentz(a), a)


def _check_mass(mass):
    if not mass > 0:
        raise ValueError(f"mass must be positive, got {mass!r}")


def standard_boost_spinor(p, mass, inverse=False):
    """Spinor part of the rotationless boost L(p), batched over ``p``.

    L(p) = (E + m + p.sigma) / sqrt(2 m (E + m)); its inverse flips ``p``.
    """
    _check_mass(mass)
    p = np.asarray(p, dtype=float)
    e = energy(p, mass)
    sign = -1.0 if inverse else 1.0
    num = (e + mass)[..., None, None] * IDENTITY2 + sign * sigma_dot(p)
    return num / np.sqrt(2.0 * mass * (e + mass))[..., None, None]


def standard_boost(p, mass):
    """Rotationless boost taking the rest momentum (m, 0, 0, 0) to (E, p)."""
    _check_mass(mass)
    p = np.asarray(p, dtype=float)
    e = float(energy(p, mass))
    lam = np.eye(4)
    lam[0, 0] = e / mass
    lam[0, 1:] = lam[1:, 0] = p / mass
    lam[1:, 1:] += np.outer(p, p) / (mass * (e + mass))
    return Transform(lam, standard_boost_spinor(p, mass))


def inverse_standard_boost_apply(t, p, mass):
    """Apply L(p)^-1 to four-vectors ``t``, batched over ``p`` (and ``t``)."""
    t = np.asarray(t, dtype=float)
    p = np.asarray(p, dtype=float)
    u = p / mass
    gamma = energy(p, mass) / mass
    t0, tv = t[..., 0], t[..., 1:]
    udt = np.sum(u * tv, axis=-1)
    out0 = gamma * t0 - udt
    outv = tv - u * t0[..., None] + u * (udt / (gamma + 1.0))[..., None]
    return np.concatenate([out0[..., None], outv], axis=-1)


def wigner_rotation(transform, p, mass):
    """Little-group element W = L(Lambda p)^-1 A L(p), batched over ``p``."""
    _check_mass(mass)
    p = np.asarray(p, dtype=float)
    p_out = transform.apply_momentum(p, mass)
    return (
        standard_boost_spinor(p_out, mass, inverse=True)
        @ transform.spinor
        @ standard_boost_spinor(p, mass)
    )


def wigner_angle(transform, p, mass):
    return rotation_angle(wigner_rotation(transform, p, mass))


def wigner_angle_oracle(boost_rapidity, particle_rapidity, angle):
    """Closed-form Wigner angle for a boost applied to a moving particle.

    ``angle`` is the angle between the particle momentum and the boost axis.
    """
    sx, cx = np.sinh(boost_rapidity / 2), np.cosh(boost_rapidity / 2)
    se, ce = np.sinh(particle_rapidity / 2), np.cosh(particle_rapidity / 2)
    return 2.0 * np.arctan2(np.sin(angle) * sx * se, cx * ce + np.cos(angle) * sx * se)


def null_eigenvectors(lam):
    """Real null eigenvectors of a proper orthochronous Lorentz matrix.

    Returns a list of ``(t, eigenvalue)`` with ``t[0] == 1``, sorted by
    decreasing eigenvalue and then by decreasing spatial components
    ``(t3, t2, t1)``.
    """
    lam = np.asarray(getattr(lam, "matrix", lam), dtype=float)
    if np.max(np.abs(lam - np.eye(4))) < 1e-12:
        raise DegenerateError("degenerate: transformation is the identity")
    vals, vecs = np.linalg.eig(lam)
    real = [
        i for i, v in enumerate(vals)
        if abs(v.imag) <= 1e-10 * max(1.0, abs(v)) and v.real > 0
    ]
    real.sort(key=lambda i: vals[i].real)

    groups = []
    for i in real:
        if groups and abs(vals[i].real - vals[groups[-1][0]].real) <= 1e-9 * max(1.0, vals[i].real):
            groups[-1].append(i)
        else:
            groups.append([i])

    candidates = []
    for group in groups:
        value = float(np.mean([vals[i].real for i in group]))
        if len(group) == 1:
            v = vecs[:, group[0]]
            v = v * np.exp(-1j * np.angle(v[np.argmax(np.abs(v))]))
            if np.max(np.abs(v.imag)) > 1e-10:
                continue
            candidates.append(v.real)
        elif len(group) == 2:
            # null directions inside a two-dimensional eigenspace
            _, _, vt = np.linalg.svd(lam - value * np.eye(4))
            basis = vt[-2:].T
            gram = basis.T @ METRIC @ basis
            g, rot = np.linalg.eigh(gram)
            if g[0] * g[1] >= 0:
                continue
            for sign in (1.0, -1.0):
                coeff = rot @ np.array([np.sqrt(abs(g[1])), sign * np.sqrt(abs(g[0]))])
                candidates.append(basis @ coeff)
        else:
            raise DegenerateError(
                f"degenerate: eigenvalue {value:.6g} has multiplicity {len(group)}"
            )

    found = []
    for v in candidates:
        if abs(v[0]) < 1e-12 * np.linalg.norm(v):
            continue
        t = v / v[0]
        value = float((lam @ t)[0])
        if np.max(np.abs(lam @ t - value * t)) > 1e-10 or abs(minkowski_dot(t, t)) > 1e-10:
            continue
        if value <= 0:
            continue
        found.append((t, value))
    if not found:
        raise DegenerateError("no real null eigenvector found")
    found.sort(key=lambda tv: (-round(tv[1], 12), -tv[0][3], -tv[0][2], -tv[0][1]))
    return found
