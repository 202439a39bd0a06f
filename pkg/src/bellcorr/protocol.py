"""Entanglement distribution from a separable Werner pair via a mediator qubit.

Qubits are ordered ``A (x) B (x) C`` with C the fastest-varying index. Alice
holds A and prepares C in ``|+>``; she applies CZ(A, C), sends C to Bob, who
applies CZ(B, C) and measures C in the x basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import EPS_PSD, I2, X, Y, Z, check_density, eig_hermitian, kron, partial_trace, partial_transpose
from .measures import concurrence
from .states import StateClass, to_density, werner

PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2)
MINUS = np.array([1.0, -1.0], dtype=complex) / np.sqrt(2)
P0 = np.diag([1.0, 0.0]).astype(complex)
P1 = np.diag([0.0, 1.0]).astype(complex)

MIN_OUTCOME_PROBABILITY = 1e-15


@dataclass(frozen=True)
class ThreeQubitState:
    matrix: np.ndarray
    ordering: tuple[str, str, str] = ("A", "B", "C")

    def __post_init__(self):
        check_density(self.matrix, "three-qubit state")
        if self.matrix.shape != (8, 8):
            raise ValueError(f"expected an 8x8 state, got {self.matrix.shape}")

    def reduce_ab(self) -> np.ndarray:
        return partial_trace(self.matrix, "A", dims=(4, 2))

    def reduce_c(self) -> np.ndarray:
        return partial_trace(self.matrix, "B", dims=(4, 2))


@dataclass(frozen=True)
class ProtocolOutcome:
    p_plus: float
    p_minus: float
    rho_plus: np.ndarray
    rho_minus: np.ndarray
    c_plus: float
    c_minus: float


def cz_gate() -> np.ndarray:
    return np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex)


def cz_ac() -> np.ndarray:
    """CZ between A (control) and C, identity on B."""
    return kron(P0, I2, I2) + kron(P1, I2, Z)


def cz_bc() -> np.ndarray:
    return kron(I2, cz_gate())


def assemble_initial(t: float, cls: StateClass) -> ThreeQubitState:
    rho_ab = to_density(werner(t, cls))
    return ThreeQubitState(kron(rho_ab, np.outer(PLUS, PLUS.conj())))


def protocol_trace(t: float, cls: StateClass) -> list[ThreeQubitState]:
    """Snapshots of ABC: initial, after CZ(A, C), after CZ(B, C)."""
    snaps = [assemble_initial(t, cls)]
    for gate in (cz_ac(), cz_bc()):
        rho = gate @ snaps[-1].matrix @ gate.conj().T
        snaps.append(ThreeQubitState(0.5 * (rho + rho.conj().T)))
    return snaps


def measure_c_x(state: ThreeQubitState) -> tuple[tuple[float, np.ndarray], tuple[float, np.ndarray]]:
    """Project C onto ``|+>`` and ``|->``; return ``(p, rho_AB)`` per outcome."""
    results = []
    for vec in (PLUS, MINUS):
        proj = kron(np.eye(4), np.outer(vec, vec.conj()))
        branch = proj @ state.matrix @ proj
        p = float(np.trace(branch).real)
        if p < MIN_OUTCOME_PROBABILITY:
            raise ValueError(f"measurement outcome has probability {p:.3e}; post-state undefined")
        rho_ab = partial_trace(branch, "A", dims=(4, 2)) / p
        results.append((p, 0.5 * (rho_ab + rho_ab.conj().T)))
    return results[0], results[1]


def run_protocol(t: float, cls: StateClass) -> ProtocolOutcome:
    final = protocol_trace(t, cls)[-1]
    (p_plus, rho_plus), (p_minus, rho_minus) = measure_c_x(final)
    return ProtocolOutcome(
        p_plus=p_plus,
        p_minus=p_minus,
        rho_plus=rho_plus,
        rho_minus=rho_minus,
        c_plus=concurrence(rho_plus),
        c_minus=concurrence(rho_minus),
    )


def mediator_pt_min_eigenvalues(trace: list[ThreeQubitState]) -> list[float]:
    """Smallest eigenvalue of the partial transpose over C, per snapshot."""
    out = []
    for snap in trace:
        pt = partial_transpose(snap.matrix, "B", dims=(4, 2))
        evals, _ = eig_hermitian(0.5 * (pt + pt.conj().T))
        out.append(float(evals[-1]))
    return out


def mediator_ppt_check(trace: list[ThreeQubitState]) -> list[bool]:
    """PPT across the C | AB cut for each snapshot.

    PPT is only necessary for separability in 2 x 4, so a ``True`` here does
    not certify that C stays separable. A ``False`` does certify entanglement.
    """
    return [m >= -EPS_PSD for m in mediator_pt_min_eigenvalues(trace)]


def closed_form_concurrence(t: float, cls: StateClass) -> float:
    """``2t/(1-t)`` for the parallel pair, ``2t/(1+t)`` for the anti-parallel one."""
    cls = StateClass.parse(cls)
    if cls is StateClass.PARALLEL:
        return 2 * t / (1 - t)
    return 2 * t / (1 + t)


def rho_minus_closed(t: float) -> np.ndarray:
    """Post-measurement AB state for outcome -1 with signed parameter ``t``."""
    c = 2 * t / (1 - t)
    return 0.25 * (np.eye(4) + c * kron(X, X) + c * kron(Y, Y) - kron(Z, Z))
