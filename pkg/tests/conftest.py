import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from relspin.linalg import sigma_dot
from relspin.minkowski import boost, four_momentum, rotation, standard_boost
from relspin.wavepacket import GridSpec, gaussian_packet

DEFAULT_CENTER = (0.0, 0.0, 2.0)


def random_unit(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_transform(rng, max_rapidity=2.0):
    """A boost followed by a rotation, both with random axes."""
    lam = boost(random_unit(rng), rng.uniform(-max_rapidity, max_rapidity))
    return rotation(random_unit(rng), rng.uniform(-np.pi, np.pi)) @ lam


def random_unitary(rng):
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def scipy_wigner(lam, momenta, mass):
    """Wigner rotations from 4x4 matrices alone, lifted to SU(2) via quaternions."""
    out = []
    for p in momenta:
        k = lam.matrix @ four_momentum(p, mass)
        w4 = np.linalg.inv(standard_boost(k[1:], mass).matrix) @ lam.matrix @ standard_boost(p, mass).matrix
        out.append(w4[1:, 1:])
    x, y, z, w = Rotation.from_matrix(np.array(out)).as_quat().T
    return w[:, None, None] * np.eye(2) - 1j * sigma_dot(np.stack([x, y, z], axis=1))


@pytest.fixture
def rng():
    return np.random.default_rng(20260101)


@pytest.fixture(scope="session")
def default_packet():
    return gaussian_packet(1.0, DEFAULT_CENTER, 0.5, [1, 0], GridSpec(21, 4.0))


@pytest.fixture(scope="session")
def rest_packet():
    return gaussian_packet(1.0, (0.0, 0.0, 0.0), 0.5, [1, 1], GridSpec(11, 4.0))


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
