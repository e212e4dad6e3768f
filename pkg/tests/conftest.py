"""Shared fixtures and independent test oracles.

The oracles here deliberately avoid the library's own helpers (embedding,
partial trace, eigendecomposition routes) so they stay valid cross-checks.
"""
from __future__ import annotations

import numpy as np
import pytest

from magrep import qcore, swap
from magrep.qcore import DensityMatrix, qubit_space

RNG_SEED = 20240917


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(RNG_SEED)


def ginibre_matrix(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Random full-rank density matrix from a complex Gaussian square root."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    return m / m.trace()


def random_two_qubit(rng: np.random.Generator) -> DensityMatrix:
    return DensityMatrix(qubit_space("q0", "q1"), ginibre_matrix(rng, 4))


def random_four_qubit(rng: np.random.Generator) -> DensityMatrix:
    return DensityMatrix(qubit_space("q0", "q1", "q2", "q3"), ginibre_matrix(rng, 16))


# Brute-force concurrence: general (non-Hermitian) eigenvalue route.
_SY = np.array([[0, -1j], [1j, 0]])
_YY = np.kron(_SY, _SY)


def concurrence_oracle(rho4: np.ndarray) -> float:
    m = np.asarray(rho4, dtype=complex)
    prod = m @ (_YY @ m.conj() @ _YY)
    lam = np.sqrt(np.clip(np.linalg.eigvals(prod).real, 0.0, None))
    lam = np.sort(lam)[::-1]
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


# Brute-force Bell-state measurement on qubits (q1, q2) of a 4-qubit register
# ordered (q0, q1, q2, q3): explicit 16x16 projection, loop-based partial
# trace, correction on the last surviving qubit.
_S2 = 1.0 / np.sqrt(2.0)
_BF_BELL = {
    0: np.array([0, 1, 1, 0], dtype=complex) * _S2,   # psi_plus
    1: np.array([0, 1, -1, 0], dtype=complex) * _S2,  # psi_minus
    2: np.array([1, 0, 0, 1], dtype=complex) * _S2,   # phi_plus
    3: np.array([1, 0, 0, -1], dtype=complex) * _S2,  # phi_minus
}
_BF_X = np.array([[0, 1], [1, 0]], dtype=complex)
_BF_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_BF_CORR = {0: _BF_Z, 1: np.eye(2, dtype=complex), 2: _BF_Z @ _BF_X, 3: _BF_X}


def brute_force_bsm(rho16: np.ndarray, outcome: int) -> tuple[float, np.ndarray]:
    """Probability and corrected (q0, q3) state for a Bell click on (q1, q2)."""
    vec = _BF_BELL[outcome]
    proj4 = np.outer(vec, vec.conj())
    proj16 = np.kron(np.kron(np.eye(2, dtype=complex), proj4), np.eye(2, dtype=complex))
    prob = float(np.real(np.trace(proj16 @ rho16)))
    post = proj16 @ rho16 @ proj16 / prob

    def idx(i0, i1, i2, i3):
        return 8 * i0 + 4 * i1 + 2 * i2 + i3

    reduced = np.zeros((4, 4), dtype=complex)
    for i0 in range(2):
        for i3 in range(2):
            for j0 in range(2):
                for j3 in range(2):
                    acc = 0.0 + 0.0j
                    for k1 in range(2):
                        for k2 in range(2):
                            acc += post[idx(i0, k1, k2, i3), idx(j0, k1, k2, j3)]
                    reduced[2 * i0 + i3, 2 * j0 + j3] = acc
    corr = np.kron(np.eye(2, dtype=complex), _BF_CORR[outcome])
    return prob, corr @ reduced @ corr.conj().T


def exact_chain_state(p_link: float, q_swap: float, hops: int) -> DensityMatrix:
    """Density-matrix pipeline: ``hops`` Werner links fused by ``hops - 1`` swaps."""
    left = qcore.werner_state(p_link, ("end", "r0"))
    for j in range(1, hops):
        right = qcore.werner_state(p_link, (f"a{j}", f"b{j}"))
        joint = qcore.tensor_product(left, right)
        result = swap.bsm(joint, left.space.labels[1], f"a{j}", outcome="psi_minus")
        left = swap.depolarize(result.post_state, q_swap)
    return left
