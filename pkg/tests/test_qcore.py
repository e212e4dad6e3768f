"""Linear algebra primitives, state constructors and the two resource metrics."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magrep.qcore import (
    DensityMatrix,
    HilbertSpec,
    ID2,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    basis_ket,
    bell_state,
    concurrence,
    embed,
    fidelity,
    hermitian_eig,
    kron,
    matrices_equal,
    matrix_sqrt_psd,
    partial_trace,
    qubit_space,
    tensor_product,
    werner_state,
)
from conftest import concurrence_oracle, ginibre_matrix, random_two_qubit


class TestKron:
    def test_identity_case(self):
        assert np.array_equal(kron(ID2, ID2), np.eye(4))

    def test_diagonal_product(self):
        assert np.array_equal(kron(PAULI_Z, PAULI_Z), np.diag([1, -1, -1, 1]).astype(complex))

    def test_x_times_y_expansion(self):
        # expanded by hand from the 2x2 definitions
        expected = np.array(
            [
                [0, 0, 0, -1j],
                [0, 0, 1j, 0],
                [0, -1j, 0, 0],
                [1j, 0, 0, 0],
            ]
        )
        assert np.array_equal(kron(PAULI_X, PAULI_Y), expected)

    def test_associative_exactly_on_paulis(self):
        for a, b, c in [(PAULI_X, PAULI_Y, PAULI_Z), (PAULI_Z, ID2, PAULI_X)]:
            assert np.array_equal(kron(kron(a, b), c), kron(a, kron(b, c)))

    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 3), m=st.integers(2, 4))
    @settings(max_examples=50, deadline=None)
    def test_mixed_product_property(self, seed, n, m):
        r = np.random.default_rng(seed)
        a, c = (r.normal(size=(n, n)) + 1j * r.normal(size=(n, n)) for _ in range(2))
        b, d = (r.normal(size=(m, m)) + 1j * r.normal(size=(m, m)) for _ in range(2))
        lhs = kron(a, b) @ kron(c, d)
        rhs = kron(a @ c, b @ d)
        assert np.max(np.abs(lhs - rhs)) <= 1e-12


class TestMatricesEqual:
    def test_default_tolerance_is_1e10(self):
        a = np.eye(2, dtype=complex)
        assert matrices_equal(a, a + 5e-11)
        assert not matrices_equal(a, a + 5e-10)

    def test_shape_mismatch_is_unequal(self):
        assert not matrices_equal(np.eye(2), np.eye(3))


class TestHilbertSpec:
    def test_total_dimension(self):
        spec = HilbertSpec((("a", 2), ("b", 3)))
        assert spec.dim == 6
        assert spec.labels == ("a", "b")

    def test_duplicate_labels_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            HilbertSpec((("a", 2), ("a", 2)))

    def test_dimension_below_two_rejected(self):
        with pytest.raises(ValueError, match="dimension"):
            HilbertSpec((("a", 1),))

    def test_unknown_label(self):
        with pytest.raises(ValueError, match="unknown subsystem"):
            qubit_space("a", "b").index("c")


class TestDensityMatrix:
    def test_non_hermitian_rejected(self):
        m = np.eye(4, dtype=complex) / 4
        m[0, 1] = 0.2
        with pytest.raises(ValueError, match="Hermitian"):
            DensityMatrix(qubit_space("a", "b"), m)

    def test_bad_trace_rejected(self):
        with pytest.raises(ValueError, match="trace"):
            DensityMatrix(qubit_space("a", "b"), np.eye(4, dtype=complex))

    def test_negative_eigenvalue_rejected(self):
        m = np.diag([0.6, 0.5, -0.1, 0.0]).astype(complex)
        with pytest.raises(ValueError, match="positive semidefinite"):
            DensityMatrix(qubit_space("a", "b"), m)

    def test_matrix_is_readonly(self):
        rho = bell_state("psi_minus")
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1.0

    @given(seed=st.integers(0, 2**32 - 1))
    @settings(max_examples=30, deadline=None)
    def test_random_states_validate(self, seed):
        r = np.random.default_rng(seed)
        rho = DensityMatrix(qubit_space("a", "b"), ginibre_matrix(r, 4))
        assert abs(rho.matrix.trace() - 1.0) <= 1e-6

    def test_from_ket_rejects_zero_vector(self):
        with pytest.raises(ValueError, match="zero state"):
            DensityMatrix.from_ket(qubit_space("a"), [0.0, 0.0])

    def test_tensor_product_label_collision(self, rng):
        a = DensityMatrix(qubit_space("a", "b"), ginibre_matrix(rng, 4))
        with pytest.raises(ValueError, match="collision"):
            tensor_product(a, a)

    def test_basis_ket_bounds(self):
        space = qubit_space("a", "b")
        with pytest.raises(ValueError, match="outside"):
            basis_ket(space, (0, 2))
        with pytest.raises(ValueError, match="per subsystem"):
            basis_ket(space, (0,))


class TestPartialTrace:
    def test_singlet_marginal_is_mixed(self):
        rho = bell_state("psi_minus", ("a", "b"))
        reduced = partial_trace(rho, ["a"])
        assert matrices_equal(reduced.matrix, np.eye(2) / 2, atol=1e-12)

    def test_product_state_recovers_factor(self, rng):
        a = DensityMatrix(qubit_space("a"), ginibre_matrix(rng, 2))
        b = DensityMatrix(qubit_space("b"), ginibre_matrix(rng, 2))
        joint = tensor_product(a, b)
        assert matrices_equal(partial_trace(joint, ["a"]).matrix, a.matrix, atol=1e-12)

    def test_three_qubit_ghz_outer_marginal(self):
        # expand the 8x8 projector by hand: tracing the middle qubit kills
        # the |000><111| coherence, leaving an even classical mixture
        space = qubit_space("a", "b", "c")
        ghz = DensityMatrix.from_ket(space, (basis_ket(space, (0, 0, 0)) + basis_ket(space, (1, 1, 1))) / np.sqrt(2))
        reduced = partial_trace(ghz, ["a", "c"])
        expected = np.diag([0.5, 0, 0, 0.5]).astype(complex)
        assert matrices_equal(reduced.matrix, expected, atol=1e-12)

    def test_trace_preserved(self, rng):
        for _ in range(20):
            rho = DensityMatrix(qubit_space("a", "b", "c"), ginibre_matrix(rng, 8))
            reduced = partial_trace(rho, ["b"])
            assert abs(reduced.matrix.trace() - 1.0) <= 1e-9

    def test_commutes_with_convex_mixing(self, rng):
        space = qubit_space("a", "b")
        rho1 = DensityMatrix(space, ginibre_matrix(rng, 4))
        rho2 = DensityMatrix(space, ginibre_matrix(rng, 4))
        lam = 0.3
        mixed = DensityMatrix(space, lam * rho1.matrix + (1 - lam) * rho2.matrix)
        lhs = partial_trace(mixed, ["b"]).matrix
        rhs = lam * partial_trace(rho1, ["b"]).matrix + (1 - lam) * partial_trace(rho2, ["b"]).matrix
        assert matrices_equal(lhs, rhs, atol=1e-12)

    def test_kept_subsystems_stay_in_original_order(self, rng):
        a = DensityMatrix(qubit_space("a"), ginibre_matrix(rng, 2))
        b = DensityMatrix(qubit_space("b"), ginibre_matrix(rng, 2))
        c = DensityMatrix(qubit_space("c"), ginibre_matrix(rng, 2))
        joint = tensor_product(tensor_product(a, b), c)
        reduced = partial_trace(joint, ["c", "a"])  # request out of order
        assert reduced.space.labels == ("a", "c")
        assert matrices_equal(reduced.matrix, kron(a.matrix, c.matrix), atol=1e-12)

    def test_unknown_label_rejected(self):
        with pytest.raises(ValueError, match="unknown subsystem"):
            partial_trace(bell_state("psi_minus"), ["nope"])


class TestEmbed:
    def test_single_qubit_placement(self):
        space = qubit_space("a", "b")
        assert matrices_equal(embed(PAULI_X, space, ["b"]), kron(ID2, PAULI_X), atol=0)
        assert matrices_equal(embed(PAULI_X, space, ["a"]), kron(PAULI_X, ID2), atol=0)

    def test_reversed_two_qubit_placement(self, rng):
        space = qubit_space("a", "b")
        op = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        swapped = embed(op, space, ["b", "a"])
        perm = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
        assert matrices_equal(swapped, perm @ op @ perm, atol=1e-12)


class TestHermitianEig:
    def test_sigma_z(self):
        evals, _ = hermitian_eig(PAULI_Z)
        assert np.allclose(evals, [1.0, -1.0], atol=1e-12)

    def test_sigma_x_eigenvectors(self):
        evals, vecs = hermitian_eig(PAULI_X)
        assert np.allclose(evals, [1.0, -1.0], atol=1e-12)
        assert np.allclose(np.abs(vecs), 1 / np.sqrt(2), atol=1e-12)

    def test_werner_spectrum(self):
        # analytic spectrum: p + (1-p)/4 once, (1-p)/4 three times
        evals, _ = hermitian_eig(werner_state(0.94).matrix)
        assert np.allclose(evals, [0.955, 0.015, 0.015, 0.015], atol=1e-12)

    def test_reconstruction_and_unitarity(self, rng):
        m = ginibre_matrix(rng, 6) * 3.0
        evals, vecs = hermitian_eig(m)
        assert np.all(np.diff(evals) <= 1e-14)
        assert np.max(np.abs((vecs * evals) @ vecs.conj().T - m)) <= 1e-8
        assert np.max(np.abs(vecs @ vecs.conj().T - np.eye(6))) <= 1e-8

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValueError, match="Hermitian"):
            hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))


class TestMatrixSqrt:
    def test_identity(self):
        assert matrices_equal(matrix_sqrt_psd(np.eye(3)), np.eye(3), atol=1e-12)

    def test_diagonal(self):
        assert matrices_equal(matrix_sqrt_psd(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-12)

    def test_pure_state_is_idempotent(self):
        rho = bell_state("phi_plus").matrix
        assert matrices_equal(matrix_sqrt_psd(rho), rho, atol=1e-10)

    def test_square_recovers_input(self, rng):
        m = ginibre_matrix(rng, 5)
        s = matrix_sqrt_psd(m)
        assert np.max(np.abs(s @ s - m)) <= 1e-8

    def test_negative_eigenvalue_rejected(self):
        with pytest.raises(ValueError, match="positive semidefinite"):
            matrix_sqrt_psd(np.diag([1.0, -1e-6]))

    def test_tiny_negative_clamped(self):
        out = matrix_sqrt_psd(np.diag([1.0, -1e-10]))
        assert out[1, 1] == 0.0


class TestBellAndWerner:
    def test_singlet_entries(self):
        m = bell_state("psi_minus").matrix
        expected = np.zeros((4, 4), dtype=complex)
        expected[1, 1] = expected[2, 2] = 0.5
        expected[1, 2] = expected[2, 1] = -0.5
        assert matrices_equal(m, expected, atol=1e-12)

    def test_orthogonal_pairs(self):
        assert fidelity(bell_state("psi_plus"), bell_state("psi_minus")) <= 1e-12

    def test_phi_plus_maximally_entangled(self):
        assert concurrence(bell_state("phi_plus")) == pytest.approx(1.0, abs=1e-10)

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown Bell state"):
            bell_state("sigma_minus")

    def test_werner_limits(self):
        assert werner_state(1.0).isclose(bell_state("psi_minus"))
        assert matrices_equal(werner_state(0.0).matrix, np.eye(4) / 4, atol=1e-12)

    def test_werner_range_error(self):
        with pytest.raises(ValueError, match="outside"):
            werner_state(1.2)

    def test_werner_fidelity_analytic(self):
        assert fidelity(werner_state(0.94), bell_state("psi_minus")) == pytest.approx(0.955, abs=1e-9)
        assert fidelity(werner_state(0.5), bell_state("psi_minus")) == pytest.approx(0.625, abs=1e-9)

    def test_werner_concurrence_analytic(self):
        for p in (0.0, 0.2, 1.0 / 3.0, 0.5, 0.94, 1.0):
            expected = max(0.0, (3.0 * p - 1.0) / 2.0)
            assert concurrence(werner_state(p)) == pytest.approx(expected, abs=1e-8)


class TestConcurrence:
    def test_singlet_is_one(self):
        assert concurrence(bell_state("psi_minus")) == pytest.approx(1.0, abs=1e-10)

    def test_separable_is_zero(self):
        space = qubit_space("a", "b")
        rho = DensityMatrix.from_ket(space, basis_ket(space, (0, 1)))
        assert concurrence(rho) == 0.0

    def test_werner_boundary(self):
        assert concurrence(werner_state(1.0 / 3.0)) == pytest.approx(0.0, abs=1e-8)

    def test_shape_error(self):
        with pytest.raises(ValueError, match="4x4"):
            concurrence(np.eye(8) / 8)

    def test_matches_brute_force_oracle(self, rng):
        # Hermitian route vs the general-eigenvalue route on 200 mixed states
        for _ in range(200):
            m = ginibre_matrix(rng, 4)
            assert concurrence(m) == pytest.approx(concurrence_oracle(m), abs=1e-6)


class TestFidelity:
    def test_self_fidelity(self, rng):
        rho = random_two_qubit(rng)
        assert fidelity(rho, rho) == pytest.approx(1.0, abs=1e-9)

    def test_orthogonal_pure_states(self):
        space = qubit_space("a", "b")
        r0 = DensityMatrix.from_ket(space, basis_ket(space, (0, 0)))
        r1 = DensityMatrix.from_ket(space, basis_ket(space, (1, 1)))
        assert fidelity(r0, r1) <= 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            fidelity(np.eye(4) / 4, np.eye(2) / 2)

    @given(seed=st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_symmetry(self, seed):
        r = np.random.default_rng(seed)
        a, b = ginibre_matrix(r, 4), ginibre_matrix(r, 4)
        assert abs(fidelity(a, b) - fidelity(b, a)) <= 1e-8

    @given(seed=st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_pure_state_overlap(self, seed):
        r = np.random.default_rng(seed)
        space = qubit_space("a", "b")
        v = r.normal(size=4) + 1j * r.normal(size=4)
        w = r.normal(size=4) + 1j * r.normal(size=4)
        v, w = v / np.linalg.norm(v), w / np.linalg.norm(w)
        overlap = abs(np.vdot(v, w)) ** 2
        f = fidelity(DensityMatrix.from_ket(space, v), DensityMatrix.from_ket(space, w))
        assert f == pytest.approx(overlap, abs=1e-9)
