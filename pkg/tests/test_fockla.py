import math

import numpy as np
import pytest

from rindler_corr.exception import (
    DimensionError,
    EigenSolverError,
    NegativeEigenvalueError,
    StateValidationError,
)
from rindler_corr.fockla import (
    eigenvalues_symmetric,
    entropy_from_spectrum,
    jacobi_eigenvalues,
    mix,
    outer,
    partial_trace,
    pure_reduced_spectrum,
    reduce_pure,
    tensor,
    von_neumann_entropy,
)
from rindler_corr.model import (
    BasisLabel,
    DensityMatrix,
    PureStateVector,
    Spectrum,
    Tolerances,
)
from rindler_corr.utils.const import EigenSolver, Subsystem

A, R, ANTI_R = Subsystem.ALICE, Subsystem.ROB, Subsystem.ANTIROB


def random_symmetric(rng: np.random.Generator, *shape: int) -> np.ndarray:
    m = rng.standard_normal(shape)
    return m + np.swapaxes(m, -1, -2)


# ── Jacobi ───────────────────────────────────────────────────────────────


class TestJacobi:
    """Cyclic Jacobi against LAPACK."""

    @pytest.mark.parametrize("size", [2, 3, 6, 11])
    def test_matches_lapack(self, size):
        rng = np.random.default_rng(size)
        matrix = random_symmetric(rng, size, size)
        expected = np.sort(np.linalg.eigvalsh(matrix))[::-1]
        np.testing.assert_allclose(jacobi_eigenvalues(matrix), expected, atol=1e-10)

    def test_stack_is_solved_per_matrix(self):
        rng = np.random.default_rng(7)
        stack = random_symmetric(rng, 4, 5, 5)
        values = jacobi_eigenvalues(stack)
        assert values.shape == (4, 5)
        for matrix, row in zip(stack, values):
            expected = np.sort(np.linalg.eigvalsh(matrix))[::-1]
            np.testing.assert_allclose(row, expected, atol=1e-10)

    def test_descending_order(self):
        values = jacobi_eigenvalues(np.diag([0.1, 0.7, 0.2]))
        np.testing.assert_array_equal(values, [0.7, 0.2, 0.1])

    def test_one_by_one(self):
        np.testing.assert_array_equal(jacobi_eigenvalues([[0.4]]), [0.4])

    def test_diagonal_input_needs_no_sweep(self):
        values = jacobi_eigenvalues(np.diag([1.0, 2.0]), max_sweeps=0)
        np.testing.assert_array_equal(values, [2.0, 1.0])

    def test_exhausted_sweeps(self):
        with pytest.raises(EigenSolverError):
            jacobi_eigenvalues([[1.0, 0.5], [0.5, 1.0]], max_sweeps=0)

    @pytest.mark.parametrize("shape", [(3,), (2, 3), (2, 3, 4)])
    def test_not_square(self, shape):
        with pytest.raises(DimensionError):
            jacobi_eigenvalues(np.zeros(shape))

    def test_input_is_not_modified(self):
        matrix = np.array([[1.0, 0.5], [0.5, 1.0]])
        jacobi_eigenvalues(matrix)
        assert matrix[0, 1] == 0.5


# ── construction and reduction ───────────────────────────────────────────


class TestConstruction:
    def test_outer_of_bell_vector(self, bell_vector, bell_state):
        np.testing.assert_allclose(outer(bell_vector).to_dense(), bell_state.to_dense())

    def test_tensor(self, product_state):
        alice = DensityMatrix.from_dense(BasisLabel.of((A, 2)), np.full((2, 2), 0.5))
        rob = DensityMatrix.from_dense(BasisLabel.of((R, 2)), np.diag([0.7, 0.3]))
        joined = tensor(alice, rob)
        assert joined.basis == product_state.basis
        np.testing.assert_allclose(joined.to_dense(), product_state.to_dense())

    def test_tensor_with_hermitian_factor(self):
        alice = DensityMatrix.from_dense(
            BasisLabel.of((A, 2)), np.array([[0.5, -0.5j], [0.5j, 0.5]])
        )
        rob = DensityMatrix.from_dense(BasisLabel.of((R, 2)), np.diag([0.7, 0.3]))
        joined = tensor(alice, rob)
        np.testing.assert_allclose(
            joined.to_dense(), np.kron(alice.to_dense(), rob.to_dense())
        )

    def test_tensor_shared_factor(self, bell_state):
        with pytest.raises(DimensionError):
            tensor(bell_state, bell_state)

    def test_mix(self, bell_state, product_state):
        mixed = mix([(0.25, bell_state), (0.75, product_state)])
        np.testing.assert_allclose(
            mixed.to_dense(),
            0.25 * bell_state.to_dense() + 0.75 * product_state.to_dense(),
        )

    @pytest.mark.parametrize("weights", [(0.5, 0.6), (1.2, -0.2)])
    def test_mix_invalid_weights(self, bell_state, product_state, weights):
        with pytest.raises(StateValidationError):
            mix([(weights[0], bell_state), (weights[1], product_state)])

    def test_mix_nothing(self):
        with pytest.raises(DimensionError):
            mix([])


class TestReduction:
    def test_partial_trace_of_bell_state(self, bell_state):
        np.testing.assert_allclose(partial_trace(bell_state, [R]).to_dense(), np.eye(2) / 2)

    def test_partial_trace_of_product(self, product_state):
        rob = partial_trace(product_state, ["R"])
        np.testing.assert_allclose(rob.to_dense(), np.diag([0.7, 0.3]))

    def test_partial_trace_keeping_everything(self, bell_state):
        assert partial_trace(bell_state, [A, R]) is bell_state

    def test_partial_trace_matches_dense_reshape(self):
        rng = np.random.default_rng(3)
        basis = BasisLabel.of((A, 2), (R, 3), (ANTI_R, 4))
        v = rng.standard_normal(basis.total_dim)
        v /= np.linalg.norm(v)
        rho = DensityMatrix.from_dense(basis, np.outer(v, v))
        reduced = partial_trace(rho, [A, ANTI_R])
        tensor6 = np.outer(v, v).reshape(2, 3, 4, 2, 3, 4)
        expected = np.einsum("ajbcjd->abcd", tensor6).reshape(8, 8)
        np.testing.assert_allclose(reduced.to_dense(), expected, atol=1e-14)

    def test_reduce_pure_matches_partial_trace(self, bell_vector, bell_state):
        np.testing.assert_allclose(
            reduce_pure(bell_vector, [A]).to_dense(),
            partial_trace(bell_state, [A]).to_dense(),
        )

    def test_reduce_to_unknown_factor(self, bell_vector):
        with pytest.raises(DimensionError):
            reduce_pure(bell_vector, [ANTI_R])


# ── spectra and entropy ──────────────────────────────────────────────────


class TestSpectra:
    @pytest.mark.parametrize("solver", list(EigenSolver))
    def test_bell_state_is_pure(self, bell_state, solver):
        spectrum = eigenvalues_symmetric(bell_state, solver)
        np.testing.assert_allclose(spectrum.eigenvalues, [1.0, 0.0, 0.0, 0.0], atol=1e-12)

    @pytest.mark.parametrize("solver", list(EigenSolver))
    def test_hermitian_state(self, solver):
        rho = DensityMatrix.from_dense(
            BasisLabel.of((A, 2)), np.array([[0.5, -0.5j], [0.5j, 0.5]])
        )
        spectrum = eigenvalues_symmetric(rho, solver)
        np.testing.assert_allclose(spectrum.eigenvalues, [1.0, 0.0], atol=1e-12)

    def test_blocks_of_mixed_sizes(self):
        matrix = np.zeros((5, 5))
        matrix[:2, :2] = [[0.3, 0.1], [0.1, 0.2]]
        matrix[2, 2] = 0.25
        matrix[3:, 3:] = [[0.15, 0.05], [0.05, 0.1]]
        rho = DensityMatrix.from_dense(BasisLabel.of((R, 5)), matrix)
        lapack = eigenvalues_symmetric(rho, EigenSolver.LAPACK)
        jacobi = eigenvalues_symmetric(rho, EigenSolver.JACOBI)
        expected = np.sort(np.linalg.eigvalsh(matrix))[::-1]
        np.testing.assert_allclose(lapack.eigenvalues, expected, atol=1e-14)
        np.testing.assert_allclose(jacobi.eigenvalues, expected, atol=1e-12)

    def test_negative_round_off_is_clamped(self):
        rho = DensityMatrix.from_dense(BasisLabel.of((R, 2)), np.diag([1.0 + 1e-11, -1e-11]))
        spectrum = eigenvalues_symmetric(rho)
        assert spectrum.clamped_count == 1
        np.testing.assert_array_equal(spectrum.eigenvalues, [1.0, 0.0])

    def test_negative_eigenvalue_is_rejected(self):
        rho = DensityMatrix.from_dense(BasisLabel.of((R, 2)), np.diag([1.1, -0.1]))
        with pytest.raises(NegativeEigenvalueError):
            eigenvalues_symmetric(rho)

    def test_psd_tolerance_is_configurable(self):
        rho = DensityMatrix.from_dense(BasisLabel.of((R, 2)), np.diag([1.0 + 1e-6, -1e-6]))
        with pytest.raises(NegativeEigenvalueError):
            eigenvalues_symmetric(rho)
        spectrum = eigenvalues_symmetric(rho, tolerances=Tolerances(psd=1e-5, norm=1e-5))
        assert spectrum.clamped_count == 1

    def test_pure_reduced_spectrum_uses_smaller_side(self):
        basis = BasisLabel.of((A, 2), (R, 6))
        v = PureStateVector.from_indices(basis, [0, 7], [1.0, 1.0], normalize=True)
        spectrum = pure_reduced_spectrum(v, [R])
        assert len(spectrum) == 2
        np.testing.assert_allclose(spectrum.eigenvalues, [0.5, 0.5])


class TestEntropy:
    def test_maximally_mixed_qubit(self):
        rho = DensityMatrix.from_dense(BasisLabel.of((A, 2)), np.eye(2) / 2)
        assert von_neumann_entropy(rho) == pytest.approx(1.0)

    def test_pure_state(self, bell_state):
        assert von_neumann_entropy(bell_state) == pytest.approx(0.0, abs=1e-12)

    def test_zero_eigenvalues_contribute_nothing(self):
        assert entropy_from_spectrum(Spectrum(np.array([1.0, 0.0, 0.0]))) == 0.0

    def test_binary_entropy(self):
        p = 0.7
        expected = -(p * math.log2(p) + (1 - p) * math.log2(1 - p))
        assert entropy_from_spectrum(Spectrum(np.array([0.7, 0.3]))) == pytest.approx(
            expected
        )

    def test_product_entropy_is_additive(self, product_state):
        expected = 0.0 + entropy_from_spectrum(Spectrum(np.array([0.7, 0.3])))
        assert von_neumann_entropy(product_state) == pytest.approx(expected)
