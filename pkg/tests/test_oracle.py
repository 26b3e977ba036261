import math

import numpy as np
import pytest

from qtradeoff import linalg, metrics, oracle
from qtradeoff.errors import ValidationError
from qtradeoff.measurement import computational_basis

from conftest import random_hermitian, random_triple
from test_metrics import rotated_qubit_basis


class TestMaxExpectation:
    def test_zero_matrix(self):
        out = oracle.max_expectation(np.zeros((3, 3)), samples=10, refine_iters=10, seed=0)
        assert out.value == 0.0

    def test_qubit_known_eigenvalues(self):
        lam = 0.7
        m = np.array([[0.0, lam], [lam, 0.0]])
        out = oracle.max_expectation(m, samples=200, refine_iters=200, seed=1)
        assert out.value == pytest.approx(lam, abs=1e-6)

    def test_random_3x3_reaches_cubic_root(self):
        m = random_hermitian(3, 2)
        target = float(np.max(np.abs(oracle.eig3_closed(m))))
        out = oracle.max_expectation(m, samples=500, refine_iters=200, seed=3)
        assert target - 1e-4 <= out.value <= target + 1e-9

    def test_value_matches_objective_at_maximizer(self):
        m = random_hermitian(4, 4)
        out = oracle.max_expectation(m, samples=100, refine_iters=50, seed=5)
        psi = out.maximizer
        assert abs(np.real(psi.conj() @ m @ psi)) == pytest.approx(out.value, abs=1e-12)

    def test_one_sided_soundness(self):
        for seed in range(10):
            m = random_hermitian(4, 600 + seed)
            out = oracle.max_expectation(m, samples=200, refine_iters=100, seed=seed)
            assert out.value <= linalg.spectral_radius(m) + 1e-9

    def test_determinism(self):
        m = random_hermitian(3, 7)
        r1 = oracle.max_expectation(m, samples=100, refine_iters=50, seed=9)
        r2 = oracle.max_expectation(m, samples=100, refine_iters=50, seed=9)
        assert r1.value == r2.value
        assert np.array_equal(r1.maximizer, r2.maximizer)

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValidationError):
            oracle.max_expectation(np.array([[0.0, 1.0], [0.0, 0.0]]),
                                   samples=1, refine_iters=1, seed=0)


class TestMaxSumOverStates:
    def test_identity_intermediate_reaches_disturbance(self):
        theta = 1.1
        a = computational_basis(2)
        b = rotated_qubit_basis(theta)
        out = oracle.max_sum_over_states(a, a, b, samples=500, refine_iters=200, seed=0)
        assert out.value == pytest.approx(0.5 * math.sin(theta), abs=1e-4)

    def test_target_intermediate_reaches_error(self):
        a, _, b = random_triple(3, 1)
        out = oracle.max_sum_over_states(a, b, b, samples=500, refine_iters=200, seed=2)
        assert out.value == pytest.approx(metrics.error(a, b).value, abs=1e-4)

    def test_random_triple_brackets_overall_error(self):
        a, ap, b = random_triple(3, 3)
        delta = metrics.overall_error(a, ap, b).value
        out = oracle.max_sum_over_states(a, ap, b, samples=1000, refine_iters=200, seed=4)
        assert delta - 1e-3 <= out.value <= delta + 1e-9

    def test_dimension_mismatch(self):
        a = computational_basis(2)
        with pytest.raises(ValidationError):
            oracle.max_sum_over_states(a, a, computational_basis(3),
                                       samples=1, refine_iters=1, seed=0)


class TestClosedFormEigenvalues:
    def test_eig2_diagonal(self):
        assert np.allclose(oracle.eig2_closed(np.diag([2.0, -3.0])), [-3.0, 2.0])

    def test_eig2_traceless(self):
        m = np.array([[0.0, 1.0 - 1.0j], [1.0 + 1.0j, 0.0]])
        lam = math.sqrt(2.0)
        assert np.allclose(oracle.eig2_closed(m), [-lam, lam])

    def test_eig3_diagonal(self):
        assert np.allclose(oracle.eig3_closed(np.diag([1.0, -2.0, 5.0])), [-2.0, 1.0, 5.0])

    def test_eig3_degenerate(self):
        assert np.allclose(oracle.eig3_closed(np.eye(3) * 0.5), [0.5, 0.5, 0.5])

    def test_cross_validation_with_jacobi(self):
        for seed in range(30):
            m2 = random_hermitian(2, 700 + seed)
            assert np.max(np.abs(oracle.eig2_closed(m2)
                                 - linalg.eigvals_hermitian(m2))) < 1e-9
            m3 = random_hermitian(3, 800 + seed)
            assert np.max(np.abs(oracle.eig3_closed(m3)
                                 - linalg.eigvals_hermitian(m3))) < 1e-9

    def test_wrong_size_rejected(self):
        with pytest.raises(ValidationError):
            oracle.eig2_closed(np.eye(3))
        with pytest.raises(ValidationError):
            oracle.eig3_closed(np.eye(2))


class TestConvergence:
    def test_reaches_analytic_values_at_small_dims(self):
        # sampled-and-refined maxima against the spectral radius
        failures = 0
        total = 0
        for d in (2, 3, 4):
            for seed in range(10):
                m = random_hermitian(d, 900 + 10 * d + seed)
                r = linalg.spectral_radius(m)
                out = oracle.max_expectation(m, samples=500, refine_iters=200,
                                             seed=seed)
                total += 1
                if not (r - 1e-4 <= out.value <= r + 1e-9):
                    failures += 1
        assert failures == 0
