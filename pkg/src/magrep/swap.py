"""Beam-splitter interference, Bell-state measurement and entanglement swapping.

A measurement on two inner qubits of a four-qubit register projects them onto
one of the four Bell states; the heralded outcome determines a Pauli
correction that rotates the surviving outer pair back into the singlet. The
correction is always applied to the second surviving qubit (the downstream
side of the link).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qcore import (
    BELL_LABELS,
    DensityMatrix,
    ID2,
    PAULI_X,
    PAULI_Z,
    bell_state,
    embed,
    kron,
    partial_trace,
)

# Heralded outcome below this probability cannot be selected deterministically.
ZERO_BRANCH_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class BellOutcome:
    """One heralded measurement result: projector plus feed-forward correction."""

    label: str
    index: int
    projector: np.ndarray
    correction: np.ndarray


def _build_outcomes() -> tuple[BellOutcome, ...]:
    corrections = {
        "psi_plus": PAULI_Z,
        "psi_minus": ID2,
        "phi_plus": PAULI_Z @ PAULI_X,
        "phi_minus": PAULI_X,
    }
    out = []
    for j, label in enumerate(BELL_LABELS):
        proj = bell_state(label).matrix
        out.append(BellOutcome(label=label, index=j, projector=proj, correction=corrections[label]))
    return tuple(out)


BELL_OUTCOMES: tuple[BellOutcome, ...] = _build_outcomes()


def bell_outcome(key: int | str) -> BellOutcome:
    """Look up an outcome by index (0..3) or label."""
    if isinstance(key, str):
        for o in BELL_OUTCOMES:
            if o.label == key:
                return o
        raise ValueError(f"unknown outcome {key!r}; expected one of {BELL_LABELS}")
    if not 0 <= key <= 3:
        raise ValueError(f"outcome index {key} outside 0..3")
    return BELL_OUTCOMES[key]


@dataclass(frozen=True, eq=False)
class SwapResult:
    """Outcome of one heralded swap: which Bell click, how likely, what remains."""

    outcome: BellOutcome
    probability: float
    post_state: DensityMatrix


def beam_splitter_unitary(beta: float, t: float) -> np.ndarray:
    """Two-mode mixing unitary for coupling rate ``beta`` acting for time ``t``."""
    c, s = math.cos(beta * t), math.sin(beta * t)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def swap_time(g_bs: float) -> float:
    """Evolution time for a full mode swap: pi / (2 g_bs)."""
    if g_bs <= 0:
        raise ValueError(f"beam-splitter rate must be > 0, got {g_bs}")
    return math.pi / (2.0 * g_bs)


def apply_io_relations(modes, beta_t: float = math.pi / 4.0):
    """Mix a two-mode pair (v, h) through the splitter with angle ``beta_t``.

    Entries may be scalars or operator matrices; a second application with
    ``-beta_t`` undoes the first.
    """
    v1, h1 = modes
    c, s = math.cos(beta_t), math.sin(beta_t)
    v2 = c * v1 - 1j * s * h1
    h2 = -1j * s * v1 + c * h1
    return (v2, h2)


def _require_four_qubits(rho: DensityMatrix, qubit_a: str, qubit_b: str) -> None:
    space = rho.space
    if len(space.subsystems) != 4 or any(d != 2 for d in space.dims):
        raise ValueError(f"need a register of exactly four qubits, got dims {space.dims}")
    if qubit_a == qubit_b:
        raise ValueError("measurement qubits must be distinct")
    space.index(qubit_a)
    space.index(qubit_b)


def bsm_probabilities(rho: DensityMatrix, qubit_a: str, qubit_b: str) -> np.ndarray:
    """Probabilities of the four Bell clicks on qubits (a, b)."""
    _require_four_qubits(rho, qubit_a, qubit_b)
    probs = np.empty(4)
    for o in BELL_OUTCOMES:
        proj = embed(o.projector, rho.space, (qubit_a, qubit_b))
        probs[o.index] = float(np.real(np.trace(proj @ rho.matrix)))
    return probs


def bsm(
    rho: DensityMatrix,
    qubit_a: str,
    qubit_b: str,
    outcome: int | str | None = None,
    rng: np.random.Generator | int | None = None,
) -> SwapResult:
    """Bell-state measurement on qubits (a, b) of a four-qubit state.

    Pass ``outcome`` to select a branch deterministically, or ``rng`` (a seed
    or a Generator, owned by the caller) to sample one. The two surviving
    qubits are renormalized, and the outcome's Pauli correction is applied to
    the second survivor so every branch lands on the same target pair.
    """
    _require_four_qubits(rho, qubit_a, qubit_b)
    probs = bsm_probabilities(rho, qubit_a, qubit_b)

    if outcome is not None:
        chosen = bell_outcome(outcome)
        if probs[chosen.index] < ZERO_BRANCH_TOL:
            raise ValueError(
                f"outcome {chosen.label} has probability {probs[chosen.index]:.3e}; branch is empty"
            )
    else:
        if rng is None:
            raise ValueError("pass either a deterministic outcome or an rng seed/Generator")
        if not isinstance(rng, np.random.Generator):
            rng = np.random.default_rng(rng)
        weights = np.clip(probs, 0.0, None)
        chosen = BELL_OUTCOMES[int(rng.choice(4, p=weights / weights.sum()))]

    proj = embed(chosen.projector, rho.space, (qubit_a, qubit_b))
    prob = float(probs[chosen.index])
    reduced = proj @ rho.matrix @ proj / prob
    keep = [lbl for lbl in rho.space.labels if lbl not in (qubit_a, qubit_b)]
    survivors = partial_trace(DensityMatrix(rho.space, reduced), keep)
    corr = kron(ID2, chosen.correction)
    fixed = corr @ survivors.matrix @ corr.conj().T
    return SwapResult(
        outcome=chosen,
        probability=prob,
        post_state=DensityMatrix(survivors.space, fixed),
    )


def node_swap_gate(rho: DensityMatrix, label_a: str, label_b: str) -> DensityMatrix:
    """Exchange the roles of two qubit subsystems (full SWAP conjugation)."""
    space = rho.space
    dims = space.dims
    for lbl in (label_a, label_b):
        if dims[space.index(lbl)] != 2:
            raise ValueError(f"subsystem {lbl!r} is not a qubit")
    swap4 = np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    )
    u = embed(swap4, space, (label_a, label_b))
    return DensityMatrix(space, u @ rho.matrix @ u.conj().T)


def depolarize(rho: DensityMatrix, q: float) -> DensityMatrix:
    """Two-qubit depolarizing channel with retention q: q rho + (1-q) I/4."""
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"retention q={q} outside [0, 1]")
    if rho.space.dim != 4:
        raise ValueError(f"depolarize expects a two-qubit state, got dimension {rho.space.dim}")
    m = q * rho.matrix + (1.0 - q) * np.eye(4, dtype=complex) / 4.0
    return DensityMatrix(rho.space, m)


def heralded_link_probability(length_km: float, attenuation_length_km: float = 10.0) -> float:
    """Heralded success of a linear-optics Bell click over a lossy span.

    exp(-L/d)/2: the 1/2 is the intrinsic linear-optics analyzer ceiling, the
    exponential is two-photon survival over length L with attenuation length d.
    """
    if length_km < 0:
        raise ValueError(f"length must be >= 0, got {length_km}")
    if attenuation_length_km <= 0:
        raise ValueError(f"attenuation length must be > 0, got {attenuation_length_km}")
    return math.exp(-length_km / attenuation_length_km) / 2.0
