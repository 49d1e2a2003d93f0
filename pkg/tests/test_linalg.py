import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from photonlift import linalg
from photonlift.errors import ArgumentError, CapacityError, DimensionError, PreconditionError


def complex_square(max_n=5):
    return st.integers(1, max_n).flatmap(
        lambda n: arrays(np.complex128, (n, n), elements=st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
    )


class TestPermanent:
    def test_identity(self):
        assert linalg.permanent_naive(np.eye(3)) == 1
        assert linalg.permanent_ryser(np.eye(2)) == 1

    def test_two_by_two(self):
        a, b, c, d = 1 + 2j, -0.5, 3j, 2
        A = np.array([[a, b], [c, d]])
        for per in (linalg.permanent_naive, linalg.permanent_ryser):
            assert per(A) == pytest.approx(a * d + b * c)

    def test_all_ones(self):
        assert linalg.permanent_naive(np.ones((3, 3))) == 6
        assert linalg.permanent_ryser(np.ones((4, 4))) == 24

    def test_random_five(self, rng):
        A = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        naive = linalg.permanent_naive(A)
        assert abs(linalg.permanent_ryser(A) - naive) <= 1e-10 * abs(naive)

    def test_rejects_rectangular(self):
        with pytest.raises(DimensionError):
            linalg.permanent_ryser(np.ones((2, 3)))

    def test_ryser_capacity(self):
        with pytest.raises(CapacityError):
            linalg.permanent_ryser(np.zeros((63, 63)))

    @settings(max_examples=60, deadline=None)
    @given(complex_square())
    def test_ryser_matches_naive(self, A):
        naive = linalg.permanent_naive(A)
        scale = math.prod(np.abs(A).sum(axis=1)) + 1e-300
        assert abs(linalg.permanent_ryser(A) - naive) <= 1e-10 * scale

    @settings(max_examples=40, deadline=None)
    @given(complex_square(), st.randoms(use_true_random=False))
    def test_invariant_under_row_and_column_permutation(self, A, rnd):
        n = A.shape[0]
        rows, cols = list(range(n)), list(range(n))
        rnd.shuffle(rows)
        rnd.shuffle(cols)
        B = A[np.ix_(rows, cols)]
        scale = math.prod(np.abs(A).sum(axis=1)) + 1e-300
        assert abs(linalg.permanent_ryser(B) - linalg.permanent_ryser(A)) <= 1e-10 * scale


class TestLogarithm:
    def test_identity(self):
        assert np.allclose(linalg.principal_log_unitary(np.eye(3)), 0)

    def test_minus_one_goes_to_plus_pi(self):
        K = linalg.principal_log_unitary(np.diag([-1.0, 1.0]))
        assert np.allclose(K, np.diag([np.pi, 0]), atol=1e-12)

    def test_qft4_spectrum(self):
        U = linalg.qft_matrix(4)
        K = linalg.principal_log_unitary(U)
        assert np.abs(linalg.exp_i_hermitian(K) - U).max() <= 1e-8
        w = np.linalg.eigvalsh(K)
        allowed = np.array([0, np.pi / 2, np.pi, -np.pi / 2])
        assert all(np.min(np.abs(allowed - x)) < 1e-8 for x in w)
        assert w.min() > -np.pi + 1e-6

    def test_rejects_non_unitary(self):
        with pytest.raises(PreconditionError):
            linalg.principal_log_unitary(2 * np.eye(2))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 6), st.integers(0, 2**32 - 1))
    def test_round_trip(self, m, seed):
        U = linalg.haar_random_unitary(m, seed)
        K = linalg.principal_log_unitary(U)
        assert np.allclose(K, K.conj().T)
        assert np.abs(linalg.exp_i_hermitian(K) - U).max() <= 1e-8


class TestRandom:
    def test_haar_unitary(self):
        for m in (1, 2, 5):
            U = linalg.haar_random_unitary(m, 3)
            assert np.abs(U.conj().T @ U - np.eye(m)).max() <= 1e-10

    def test_haar_entry_mean(self):
        rng = np.random.default_rng(11)
        vals = [abs(linalg.haar_random_unitary(4, rng)[0, 0]) ** 2 for _ in range(10_000)]
        assert abs(np.mean(vals) - 0.25) <= 0.01

    def test_haar_phases_uniform(self):
        # without the R-diagonal phase fix, arg U_11 would be biased
        rng = np.random.default_rng(12)
        z = np.mean([linalg.haar_random_unitary(3, rng)[0, 0] for _ in range(5000)])
        assert abs(z) < 0.03

    def test_deterministic(self):
        assert np.array_equal(linalg.haar_random_unitary(4, 9), linalg.haar_random_unitary(4, 9))
        assert np.array_equal(linalg.random_complex_matrix(2, 3, 9), linalg.random_complex_matrix(2, 3, 9))

    def test_complex_matrix_moments(self):
        A = linalg.random_complex_matrix(2, 3, 1)
        assert A.shape == (2, 3)
        Z = linalg.random_complex_matrix(200, 500, 2)
        for part in (Z.real, Z.imag):
            assert abs(part.mean()) <= 0.02
            assert abs(part.var() - 1) <= 0.05

    def test_bad_sizes(self):
        with pytest.raises(DimensionError):
            linalg.random_complex_matrix(0, 2)
        with pytest.raises(DimensionError):
            linalg.haar_random_unitary(0)

    def test_child_streams_do_not_depend_on_count(self):
        a = linalg.spawn_rngs(5, 3)[1].standard_normal(4)
        b = linalg.spawn_rngs(5, 10)[1].standard_normal(4)
        assert np.array_equal(a, b)


class TestSpecialMatrices:
    def test_qft(self):
        assert np.allclose(linalg.qft_matrix(1), [[1]])
        Q = linalg.qft_matrix(6)
        assert np.allclose(Q[0], 1 / np.sqrt(6))
        assert Q[1, 1] == pytest.approx(np.exp(2j * np.pi / 6) / np.sqrt(6))
        assert np.abs(np.linalg.matrix_power(Q, 4) - np.eye(6)).max() <= 1e-10

    def test_rotation(self):
        assert np.array_equal(linalg.rotation_matrix(3, 0), np.eye(3))
        assert np.array_equal(linalg.rotation_matrix(3, 1) @ [1, 0, 0], [0, 1, 0])
        P = linalg.rotation_matrix(70, 1)
        assert np.abs(P.conj().T @ P - np.eye(70)).max() == 0
        with pytest.raises(ArgumentError):
            linalg.rotation_matrix(3, 3)


class TestMetrics:
    def test_frobenius(self, rng):
        A = rng.standard_normal((3, 3))
        assert linalg.frobenius_distance(A, A) == 0
        assert linalg.frobenius_distance(np.eye(2), np.zeros((2, 2))) == pytest.approx(np.sqrt(2))
        with pytest.raises(DimensionError):
            linalg.frobenius_distance(np.eye(2), np.eye(3))

    def test_hs_inner(self, rng):
        assert linalg.hs_inner(np.eye(4), np.eye(4)) == 4
        A = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        B = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        assert linalg.hs_inner(A, B) == pytest.approx(np.conj(linalg.hs_inner(B, A)))
        assert linalg.hs_inner(A, A).real == pytest.approx(linalg.frobenius_distance(A, 0 * A) ** 2)

    def test_min_phase_distance(self):
        U = linalg.haar_random_unitary(4, 0)
        dist, alpha = linalg.min_phase_distance(np.exp(0.7j) * U, U)
        assert dist <= 1e-12
        assert alpha == pytest.approx(0.7)


def test_unitarity_report_and_env(monkeypatch):
    report = linalg.unitarity_report(np.diag([1, 1 + 1e-6]))
    assert not report.is_unitary and report.max_deviation == pytest.approx(2e-6, rel=1e-3)
    monkeypatch.setenv(linalg.TOL_ENV, "1e-5")
    assert linalg.default_tol() == 1e-5
    monkeypatch.delenv(linalg.TOL_ENV)
    assert linalg.default_tol() == linalg.UNITARY_TOL
