"""Dense complex linear algebra and two-qubit state primitives.

Everything is built on plain ``numpy`` complex arrays. Density matrices
additionally carry a labeled tensor-product structure (:class:`HilbertSpec`)
so multi-node protocols can address subsystems by name instead of by index.
All Hilbert spaces in this package are small (total dimension <= 16), so the
storage is unapologetically dense.
"""
from __future__ import annotations

import math
from dataclasses import InitVar, dataclass
from typing import Iterable, Sequence

import numpy as np

# Comparison / validation tolerances (absolute).
DEFAULT_ATOL = 1e-10
HERMITIAN_TOL = 1e-9
TRACE_TOL = 1e-6
PSD_TOL = 1e-9


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


ID2 = _readonly(np.eye(2, dtype=complex))
PAULI_X = _readonly(np.array([[0, 1], [1, 0]], dtype=complex))
PAULI_Y = _readonly(np.array([[0, -1j], [1j, 0]], dtype=complex))
PAULI_Z = _readonly(np.array([[1, 0], [0, -1]], dtype=complex))

BELL_LABELS = ("psi_plus", "psi_minus", "phi_plus", "phi_minus")

_SQRT_HALF = 1.0 / math.sqrt(2.0)
_BELL_KETS = {
    "psi_plus": np.array([0, 1, 1, 0], dtype=complex) * _SQRT_HALF,
    "psi_minus": np.array([0, 1, -1, 0], dtype=complex) * _SQRT_HALF,
    "phi_plus": np.array([1, 0, 0, 1], dtype=complex) * _SQRT_HALF,
    "phi_minus": np.array([1, 0, 0, -1], dtype=complex) * _SQRT_HALF,
}


def as_matrix(state) -> np.ndarray:
    """Return the underlying complex matrix of a state or array-like."""
    if isinstance(state, DensityMatrix):
        return state.matrix
    return np.asarray(state, dtype=complex)


def matrices_equal(a, b, atol: float = DEFAULT_ATOL) -> bool:
    """Entrywise equality within an absolute tolerance."""
    a = as_matrix(a)
    b = as_matrix(b)
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= atol))


def kron(a, b) -> np.ndarray:
    """Kronecker product of two matrices (dimensions multiply)."""
    return np.kron(as_matrix(a), as_matrix(b))


@dataclass(frozen=True)
class HilbertSpec:
    """Ordered, labeled tensor-product decomposition of a Hilbert space.

    ``subsystems`` is a sequence of ``(label, dimension)`` pairs; labels must
    be unique and every dimension must be at least 2.
    """

    subsystems: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        subs = tuple((str(lbl), int(d)) for lbl, d in self.subsystems)
        object.__setattr__(self, "subsystems", subs)
        if not subs:
            raise ValueError("HilbertSpec needs at least one subsystem")
        labels = [lbl for lbl, _ in subs]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate subsystem labels: {labels}")
        for lbl, d in subs:
            if d < 2:
                raise ValueError(f"subsystem {lbl!r} has dimension {d} < 2")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lbl for lbl, _ in self.subsystems)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.subsystems)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    def index(self, label: str) -> int:
        """Position of a labeled subsystem; unknown labels are an error."""
        for i, (lbl, _) in enumerate(self.subsystems):
            if lbl == label:
                return i
        raise ValueError(f"unknown subsystem label {label!r}; have {self.labels}")


def qubit_space(*labels: str) -> HilbertSpec:
    """Spec for a register of two-level subsystems with the given labels."""
    return HilbertSpec(tuple((lbl, 2) for lbl in labels))


def basis_ket(space: HilbertSpec, occupations: Sequence[int]) -> np.ndarray:
    """Product basis vector |n_0 n_1 ...> for the given occupation numbers."""
    dims = space.dims
    if len(occupations) != len(dims):
        raise ValueError("one occupation number per subsystem required")
    for n, d in zip(occupations, dims):
        if not 0 <= n < d:
            raise ValueError(f"occupation {n} outside [0, {d})")
    v = np.zeros(space.dim, dtype=complex)
    v[int(np.ravel_multi_index(tuple(occupations), dims))] = 1.0
    return v


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated trace-one positive-semidefinite operator on a labeled space.

    Construction checks squareness, Hermiticity (1e-9), unit trace (1e-6) and
    positivity (eigenvalues >= -``psd_tol``). Instances are immutable; the
    stored array is a read-only copy, so values can safely be shared between
    threads.
    """

    space: HilbertSpec
    matrix: np.ndarray
    psd_tol: InitVar[float] = PSD_TOL

    def __post_init__(self, psd_tol: float) -> None:
        m = np.array(self.matrix, dtype=complex)
        d = self.space.dim
        if m.shape != (d, d):
            raise ValueError(f"matrix shape {m.shape} does not match space dimension {d}")
        herm = float(np.max(np.abs(m - m.conj().T)))
        if herm > HERMITIAN_TOL:
            raise ValueError(f"matrix not Hermitian: max deviation {herm:.3e}")
        tr = m.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace {tr} deviates from 1 by more than {TRACE_TOL}")
        min_eig = float(np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0])
        if min_eig < -psd_tol:
            raise ValueError(f"matrix not positive semidefinite: min eigenvalue {min_eig:.3e}")
        object.__setattr__(self, "matrix", _readonly(m))

    @classmethod
    def from_ket(cls, space: HilbertSpec, amplitudes: Sequence[complex]) -> "DensityMatrix":
        """Pure-state projector |psi><psi| from a (normalized) state vector."""
        v = np.asarray(amplitudes, dtype=complex)
        norm = np.linalg.norm(v)
        if norm == 0:
            raise ValueError("zero state vector")
        v = v / norm
        return cls(space, np.outer(v, v.conj()))

    def isclose(self, other: "DensityMatrix", atol: float = DEFAULT_ATOL) -> bool:
        return self.space == other.space and matrices_equal(self.matrix, other.matrix, atol)


def tensor_product(a: DensityMatrix, b: DensityMatrix) -> DensityMatrix:
    """Joint state of two independent registers; labels must not collide."""
    clash = set(a.space.labels) & set(b.space.labels)
    if clash:
        raise ValueError(f"label collision in tensor product: {sorted(clash)}")
    space = HilbertSpec(a.space.subsystems + b.space.subsystems)
    return DensityMatrix(space, np.kron(a.matrix, b.matrix))


def partial_trace(rho: DensityMatrix, keep: Iterable[str]) -> DensityMatrix:
    """Reduced state on the kept subsystems, in their original order."""
    keep = list(keep)
    if len(set(keep)) != len(keep):
        raise ValueError(f"duplicate labels in keep list: {keep}")
    if not keep:
        raise ValueError("must keep at least one subsystem")
    space = rho.space
    keep_pos = sorted(space.index(lbl) for lbl in keep)
    dims = space.dims
    n = len(dims)
    drop = [i for i in range(n) if i not in keep_pos]
    t = rho.matrix.reshape(dims + dims)
    k = n
    for ax in sorted(drop, reverse=True):
        t = np.trace(t, axis1=ax, axis2=ax + k)
        k -= 1
    kept_subs = tuple(space.subsystems[i] for i in keep_pos)
    d_keep = int(np.prod([d for _, d in kept_subs]))
    return DensityMatrix(HilbertSpec(kept_subs), t.reshape(d_keep, d_keep))


def embed(op, space: HilbertSpec, labels: Sequence[str]) -> np.ndarray:
    """Lift an operator acting on the listed subsystems to the full space.

    ``op`` acts on the tensor product of the named subsystems in the order
    given; identity is applied everywhere else.
    """
    op = as_matrix(op)
    dims = space.dims
    n = len(dims)
    pos = [space.index(lbl) for lbl in labels]
    if len(set(pos)) != len(pos):
        raise ValueError(f"duplicate labels in embed: {list(labels)}")
    d_sel = int(np.prod([dims[i] for i in pos]))
    if op.shape != (d_sel, d_sel):
        raise ValueError(f"operator shape {op.shape} does not match selected dimension {d_sel}")
    rest = [i for i in range(n) if i not in pos]
    d_rest = int(np.prod([dims[i] for i in rest])) if rest else 1
    big = np.kron(op, np.eye(d_rest, dtype=complex))
    perm = pos + rest
    pdims = [dims[i] for i in perm]
    inv = [perm.index(j) for j in range(n)]
    t = big.reshape(pdims + pdims)
    t = t.transpose(inv + [n + i for i in inv])
    return t.reshape(space.dim, space.dim)


def hermitian_eig(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending, real) and eigenvector columns of a Hermitian matrix."""
    m = as_matrix(m)
    dev = float(np.max(np.abs(m - m.conj().T)))
    if dev > HERMITIAN_TOL:
        raise ValueError(f"matrix not Hermitian: max deviation {dev:.3e}")
    evals, vecs = np.linalg.eigh(m)
    return evals[::-1].copy(), vecs[:, ::-1].copy()


def matrix_sqrt_psd(m) -> np.ndarray:
    """Principal square root of a Hermitian positive-semidefinite matrix.

    Eigenvalues below -1e-9 are rejected; tiny negatives inside the tolerance
    window are clamped to zero rather than propagated into the square root.
    """
    evals, vecs = hermitian_eig(m)
    if evals[-1] < -PSD_TOL:
        raise ValueError(f"matrix not positive semidefinite: min eigenvalue {evals[-1]:.3e}")
    evals = np.clip(evals, 0.0, None)
    return (vecs * np.sqrt(evals)) @ vecs.conj().T


def bell_state(kind: str, labels: tuple[str, str] = ("q0", "q1")) -> DensityMatrix:
    """One of the four maximally entangled two-qubit states.

    ``psi_minus`` is the singlet (|01> - |10>)/sqrt(2); the other kinds follow
    the usual sign conventions.
    """
    if kind not in _BELL_KETS:
        raise ValueError(f"unknown Bell state {kind!r}; expected one of {BELL_LABELS}")
    return DensityMatrix.from_ket(qubit_space(*labels), _BELL_KETS[kind])


def werner_state(p: float, labels: tuple[str, str] = ("q0", "q1")) -> DensityMatrix:
    """Singlet mixed with white noise: p |psi-><psi-| + (1-p) I/4."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"purity p={p} outside [0, 1]")
    singlet = bell_state("psi_minus", labels)
    m = p * singlet.matrix + (1.0 - p) * np.eye(4, dtype=complex) / 4.0
    return DensityMatrix(singlet.space, m)


def concurrence(rho) -> float:
    """Two-qubit concurrence, 0 (separable) to 1 (maximally entangled).

    Uses the Hermitian form sqrt(sqrt(rho) rho_tilde sqrt(rho)) so only real
    symmetric eigensolvers are ever needed; the result is clamped to [0, 1].
    """
    m = as_matrix(rho)
    if m.shape != (4, 4):
        raise ValueError(f"concurrence requires a two-qubit (4x4) state, got {m.shape}")
    yy = kron(PAULI_Y, PAULI_Y)
    rho_tilde = yy @ m.conj() @ yy
    s = matrix_sqrt_psd(m)
    lam_sq, _ = hermitian_eig(s @ rho_tilde @ s)
    lam = np.sqrt(np.clip(lam_sq, 0.0, None))
    c = lam[0] - lam[1] - lam[2] - lam[3]
    return float(min(1.0, max(0.0, c)))


def fidelity(rho, sigma) -> float:
    """Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 in [0, 1].

    Evaluated as the squared trace norm of sqrt(rho) sqrt(sigma), which is the
    same quantity but keeps eigenvalue roundoff from being amplified through
    the outer square root; the form is also exactly symmetric in its arguments.
    """
    a = as_matrix(rho)
    b = as_matrix(sigma)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    f = float(np.linalg.svd(matrix_sqrt_psd(a) @ matrix_sqrt_psd(b), compute_uv=False).sum() ** 2)
    return min(1.0, max(0.0, f))
