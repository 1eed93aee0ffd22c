"""Shared random-object helpers for the test suite."""
import numpy as np
import pytest

from qtradeoff import Instrument


def random_unitary(rng, dim=2):
    """Haar-ish unitary from the QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q @ np.diag(phases.conj())


def random_state(rng):
    v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    return v / np.linalg.norm(v)


def random_density(rng):
    g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng, dim):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (g + g.conj().T)


def random_instrument(rng, kraus_counts=(1, 1)):
    """Random two-outcome instrument: Gaussian Kraus blocks normalized to completeness."""
    blocks = [
        [rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(n)]
        for n in kraus_counts
    ]
    total = sum(e.conj().T @ e for ops in blocks for e in ops)
    vals, vecs = np.linalg.eigh(total)
    inv_sqrt = (vecs / np.sqrt(vals)) @ vecs.conj().T
    return Instrument(outcomes=tuple(tuple(e @ inv_sqrt for e in ops) for ops in blocks))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
