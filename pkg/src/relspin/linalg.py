"""Pauli matrices and the small 2x2 kernels used everywhere else.

Spinor maps are plain ``complex128`` arrays of shape ``(..., 2, 2)``.
"""
import math

import numpy as np

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])
# sigma^mu with sigma^0 = 1, so that X = x^mu sigma_mu for x = (x0, x1, x2, x3)
SIGMA4 = np.stack([IDENTITY2, SIGMA_X, SIGMA_Y, SIGMA_Z])


def sigma_dot(v):
    """Return ``v . sigma`` for real or complex ``v`` of shape ``(..., 3)``."""
    v = np.asarray(v)
    return np.einsum("...k,kij->...ij", v, SIGMA)


def dagger(a):
    return np.conj(np.swapaxes(a, -1, -2))


def unitarity_defect(u):
    """Largest entrywise deviation of ``u^dagger u`` from the identity."""
    u = np.asarray(u, dtype=complex)
    eye = np.eye(u.shape[-1])
    return float(np.max(np.abs(dagger(u) @ u - eye), initial=0.0))


def pauli_components(a):
    """Decompose ``a = c0 * 1 + c . sigma`` and return ``(c0, c)``."""
    a = np.asarray(a, dtype=complex)
    c0 = 0.5 * np.trace(a, axis1=-2, axis2=-1)
    c = 0.5 * np.einsum("kji,...ij->...k", SIGMA, a)
    return c0, c


def rotation_angle(w):
    """Rotation angle in [0, pi] of an SU(2) element, blind to the overall sign.

    For ``w = cos(a/2) - i sin(a/2) n.sigma`` this returns ``a`` folded into
    ``[0, pi]``.
    """
    c0, c = pauli_components(w)
    vec = np.sqrt(np.sum(np.abs(c) ** 2, axis=-1))
    return 2.0 * np.arctan2(vec, np.abs(c0))


def weighted_gram(weights, amplitudes):
    """Hermitian ``sum_i w_i a_i a_i^dagger`` for amplitudes of shape ``(n, d)``.

    Only the upper triangle is summed; the diagonal is real by construction.
    """
    a = np.asarray(amplitudes, dtype=complex)
    d = a.shape[1]
    out = np.empty((d, d), dtype=complex)
    for r in range(d):
        out[r, r] = math.fsum((weights * (a[:, r].real ** 2 + a[:, r].imag ** 2)).tolist())
        for c in range(r + 1, d):
            term = weights * a[:, r] * np.conj(a[:, c])
            out[r, c] = complex(math.fsum(term.real.tolist()), math.fsum(term.imag.tolist()))
            out[c, r] = np.conj(out[r, c])
    return out
