"""Matrix kernel and symmetric-pair geometry."""
import math

import numpy as np
import pytest

from qtradeoff import (
    ID2,
    ID4,
    SIGMA_X,
    SIGMA_XX,
    SIGMA_Z,
    fidelity,
    min_eigenvalue_hermitian,
    projector,
    symmetric_pair,
    tensor,
)
from qtradeoff.choi import OMEGA

from conftest import random_hermitian, random_state


class TestSymmetricPair:
    def test_orthogonal_endpoint(self):
        pair = symmetric_pair(0.0)
        np.testing.assert_allclose(pair.psi1, [1, 0], atol=1e-15)
        np.testing.assert_allclose(pair.psi2, [0, 1], atol=1e-15)
        assert fidelity(pair.psi1, pair.psi2) == pytest.approx(0.0, abs=1e-12)

    def test_identical_endpoint(self):
        pair = symmetric_pair(math.pi / 4)
        np.testing.assert_allclose(pair.psi1, pair.psi2, atol=1e-15)
        assert fidelity(pair.psi1, pair.psi2) == pytest.approx(1.0, abs=1e-12)

    def test_unbiased_pair_overlap(self):
        # f = sin(pi/4), f^2 = 1/2 at the midpoint angle
        pair = symmetric_pair(math.pi / 8)
        f = fidelity(pair.psi1, pair.psi2)
        assert f == pytest.approx(math.sin(math.pi / 4), abs=1e-12)
        assert f**2 == pytest.approx(0.5, abs=1e-12)

    def test_overlap_equals_sin_2alpha_on_grid(self):
        for alpha in np.linspace(0.0, math.pi / 4, 41):
            pair = symmetric_pair(alpha)
            inner = np.vdot(pair.psi1, pair.psi2)
            assert abs(inner - math.sin(2 * alpha)) <= 1e-12

    def test_component_exchange(self):
        pair = symmetric_pair(0.3)
        np.testing.assert_allclose(SIGMA_X @ pair.psi1, pair.psi2, atol=1e-15)

    @pytest.mark.parametrize("alpha", [-0.1, math.pi / 4 + 1e-6, 1.0])
    def test_domain_error(self, alpha):
        with pytest.raises(ValueError):
            symmetric_pair(alpha)

    def test_manual_construction_checks_geometry(self):
        from qtradeoff import StatePair
        good = symmetric_pair(0.3)
        with pytest.raises(ValueError):
            StatePair(alpha=0.3, psi1=good.psi1.copy(), psi2=good.psi1.copy())
        with pytest.raises(ValueError):
            StatePair(alpha=0.2, psi1=good.psi1.copy(), psi2=good.psi2.copy())


class TestFidelity:
    def test_self_overlap(self, rng):
        for _ in range(10):
            psi = random_state(rng)
            assert fidelity(psi, psi) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal(self):
        assert fidelity([1, 0], [0, 1]) == 0.0

    def test_symmetric_in_arguments(self, rng):
        for _ in range(10):
            a, b = random_state(rng), random_state(rng)
            assert fidelity(a, b) == pytest.approx(fidelity(b, a), abs=1e-15)

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            fidelity([1, 1], [1, 0])


class TestTensor:
    def test_identity(self):
        np.testing.assert_array_equal(tensor(ID2, ID2), ID4)

    def test_sigma_x_pair_is_antidiagonal(self):
        np.testing.assert_array_equal(tensor(SIGMA_X, SIGMA_X), np.fliplr(np.eye(4)))

    def test_block_convention(self, rng):
        a = random_hermitian(rng, 2)
        b = random_hermitian(rng, 2)
        out = tensor(a, b)
        for i in range(2):
            for j in range(2):
                np.testing.assert_allclose(out[2 * i:2 * i + 2, 2 * j:2 * j + 2],
                                           a[i, j] * b, atol=1e-15)

    def test_trace_multiplicative(self, rng):
        for _ in range(20):
            a = random_hermitian(rng, 2)
            b = random_hermitian(rng, 2)
            assert np.trace(tensor(a, b)) == pytest.approx(np.trace(a) * np.trace(b), abs=1e-12)

    def test_projector_tensor_has_unit_trace(self):
        pair = symmetric_pair(math.pi / 8)
        p1 = projector(pair.psi1)
        assert np.trace(tensor(p1, p1)).real == pytest.approx(1.0, abs=1e-12)

    def test_bilinear(self, rng):
        a, b, c = (random_hermitian(rng, 2) for _ in range(3))
        np.testing.assert_allclose(tensor(a + b, c), tensor(a, c) + tensor(b, c), atol=1e-13)
        np.testing.assert_allclose(tensor(2.5 * a, c), 2.5 * tensor(a, c), atol=1e-13)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            tensor(ID2, ID4)


class TestMinEigenvalue:
    def test_identity_4(self):
        assert min_eigenvalue_hermitian(ID4) == pytest.approx(1.0, abs=1e-12)

    def test_sigma_z(self):
        assert min_eigenvalue_hermitian(SIGMA_Z) == pytest.approx(-1.0, abs=1e-12)

    def test_entangled_projector_is_rank_one(self):
        # spectrum {2, 0, 0, 0}: smallest eigenvalue 0, triply degenerate
        omega = np.outer(OMEGA, OMEGA.conj())
        assert min_eigenvalue_hermitian(omega) == pytest.approx(0.0, abs=1e-10)
        np.testing.assert_allclose(np.linalg.eigvalsh(omega), [0, 0, 0, 2], atol=1e-10)

    @pytest.mark.parametrize("dim", [2, 4])
    def test_shift_invariance(self, rng, dim):
        for _ in range(20):
            m = random_hermitian(rng, dim)
            c = float(rng.standard_normal())
            shifted = min_eigenvalue_hermitian(m + c * np.eye(dim))
            assert shifted == pytest.approx(min_eigenvalue_hermitian(m) + c, abs=1e-9)

    def test_matches_lapack_on_2x2(self, rng):
        for _ in range(20):
            m = random_hermitian(rng, 2)
            assert min_eigenvalue_hermitian(m) == pytest.approx(np.linalg.eigvalsh(m)[0], abs=1e-10)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            min_eigenvalue_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))

    def test_rejects_odd_shape(self):
        with pytest.raises(ValueError):
            min_eigenvalue_hermitian(np.eye(3))
