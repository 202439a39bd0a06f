"""Quantum operations on two-qubit states.

Channels here are mixed-unitary and bi-local: each term applies a unitary on
qubit A and another on qubit B with a classical probability. The
preparation channel turns a classically correlated seed into any separable
Bell-diagonal state; its misaligned variant models Bob's x axis being off
from Alice's.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import EPS_NUM, EPS_RECON, EPS_TRACE, I2, X, Y, Z, check_density, kron, partial_trace
from .states import BellDiagonal, StateClass

_AXES = {"x": X, "y": Y, "z": Z}


def rotation(axis: str, angle: float) -> np.ndarray:
    """Spin-1/2 rotation ``exp(-i angle sigma_axis / 2)``."""
    try:
        sigma = _AXES[axis.lower()]
    except KeyError:
        raise ValueError(f"axis must be one of x, y, z; got {axis!r}") from None
    return np.cos(angle / 2) * I2 - 1j * np.sin(angle / 2) * sigma


# H maps |0>,|1> to |+>,|->; K maps them to |y+>,|y->.
H = rotation("y", np.pi / 2)
K = rotation("x", -np.pi / 2)
# Equal to -X; the phase cancels in every conjugation.
SIGMA1 = -1j * rotation("x", np.pi)


def frame_rotation(theta: float) -> np.ndarray:
    """Operator carrying Alice's frame to Bob's for misalignment ``theta``.

    This is ``diag(e^{i theta}, e^{-i theta}) = rotation('z', -2 theta)``,
    the convention under which the misaligned-fidelity closed forms depend
    on ``sin^2 theta``. On the Bloch sphere Bob's x axis is therefore turned
    by ``2 theta``.
    """
    return rotation("z", -2.0 * theta)


def is_unitary(u, tol: float = EPS_RECON) -> bool:
    u = np.asarray(u, dtype=complex)
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)


@dataclass(frozen=True)
class MixedUnitaryChannel:
    """``rho -> sum_k p_k (U_k (x) V_k) rho (U_k (x) V_k)^dagger``."""

    terms: tuple[tuple[float, np.ndarray, np.ndarray], ...]

    def __post_init__(self):
        total = 0.0
        for p, u, v in self.terms:
            if p < 0:
                raise ValueError(f"negative channel weight {p!r}")
            if not (is_unitary(u) and is_unitary(v)):
                raise ValueError("channel terms must be unitary")
            total += p
        if abs(total - 1.0) > EPS_TRACE:
            raise ValueError(f"channel weights sum to {total!r}")

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(p for p, _, _ in self.terms)

    def __call__(self, rho) -> np.ndarray:
        return apply_channel(self, rho)


def apply_channel(ch: MixedUnitaryChannel, rho) -> np.ndarray:
    rho = check_density(rho)
    if rho.shape != (4, 4):
        raise ValueError(f"bi-local channels act on two-qubit states, got {rho.shape}")
    out = np.zeros((4, 4), dtype=complex)
    for p, u, v in ch.terms:
        if p == 0:
            continue
        w = kron(u, v)
        out += p * (w @ rho @ w.conj().T)
    return 0.5 * (out + out.conj().T)


def classical_seed(cls: StateClass) -> np.ndarray:
    """``(|00><00| + |11><11|)/2`` for parallel, ``(|01><01| + |10><10|)/2``
    for anti-parallel."""
    cls = StateClass.parse(cls)
    if cls is StateClass.PARALLEL:
        return np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex)
    if cls is StateClass.ANTIPARALLEL:
        return np.diag([0.0, 0.5, 0.5, 0.0]).astype(complex)
    raise ValueError("boundary states have no classical seed")


def _normalized_weights(raw: list[tuple[str, float]]) -> list[float]:
    for label, w in raw:
        if w < -EPS_NUM:
            raise ValueError(f"channel weight {label} = {w:.6g} is negative")
    weights = [max(w, 0.0) for _, w in raw]
    total = sum(weights)
    return [w / total for w in weights]


def _bilocal_terms(s: BellDiagonal, bob_h: np.ndarray, bob_k: np.ndarray) -> MixedUnitaryChannel:
    t1, t2, t3 = s
    weights = _normalized_weights(
        [
            ("p(I,I) = (1-t1-t2+t3)/2", (1 - t1 - t2 + t3) / 2),
            ("p(sigma1,I) = (1-t1-t2-t3)/2", (1 - t1 - t2 - t3) / 2),
            ("p(H,H) = t1", t1),
            ("p(K,K) = t2", t2),
        ]
    )
    return MixedUnitaryChannel(
        (
            (weights[0], I2, I2),
            (weights[1], SIGMA1, I2),
            (weights[2], H, bob_h),
            (weights[3], K, bob_k),
        )
    )


def preparation_channel(s: BellDiagonal) -> MixedUnitaryChannel:
    """Bi-local channel taking each classical seed to its class state.

    Applied to ``classical_seed(PARALLEL)`` it yields ``to_density(s)``;
    applied to the anti-parallel seed it yields ``to_density(-s)``.
    """
    return _bilocal_terms(s, H, K)


def misaligned_channel(s: BellDiagonal, theta: float) -> MixedUnitaryChannel:
    """Preparation channel with Bob's H and K taken about rotated axes."""
    r = frame_rotation(theta)
    return _bilocal_terms(s, r @ H @ r.conj().T, r @ K @ r.conj().T)


def depolarize(rho, side: str, p: float) -> np.ndarray:
    """Depolarize one qubit: ``(1-p) rho + p * (I/2 on side) (x) tr_side(rho)``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"depolarizing probability must be in [0, 1], got {p!r}")
    rho = check_density(rho)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a two-qubit state, got {rho.shape}")
    if side in ("A", "a"):
        mixed = kron(I2 / 2, partial_trace(rho, "B"))
    elif side in ("B", "b"):
        mixed = kron(partial_trace(rho, "A"), I2 / 2)
    else:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return (1.0 - p) * rho + p * mixed


def not_shrink(n_copies: int) -> float:
    """Bloch shrink factor ``N / (N + 2)`` of the optimal NOT on N copies."""
    if int(n_copies) != n_copies or n_copies < 1:
        raise ValueError(f"number of copies must be a positive integer, got {n_copies!r}")
    return n_copies / (n_copies + 2)


def optimal_not_effective(rho, n_copies: int, side: str = "B") -> np.ndarray:
    """Per-qubit effect of the optimal NOT: Bloch vector ``b -> -s b``.

    For a single qubit this is ``s (I - rho) + (1 - s) I/2``, which sends a
    pure state to ``N/(N+2) rho_perp + I/(N+2)``. On a two-qubit state it
    acts on ``side`` and scales the correlation tensor and that side's Bloch
    vector by ``-s``. For ``N >= 2`` the map is not completely positive on a
    single copy; it stands in for the N-copy process.
    """
    s = not_shrink(n_copies)
    rho = check_density(rho)
    if rho.shape == (2, 2):
        return s * (np.eye(2) - rho) + (1 - s) * np.eye(2) / 2
    if rho.shape != (4, 4):
        raise ValueError(f"expected a one- or two-qubit state, got {rho.shape}")
    if side in ("A", "a"):
        keep = kron(I2, partial_trace(rho, "B"))
    elif side in ("B", "b"):
        keep = kron(partial_trace(rho, "A"), I2)
    else:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return s * (keep - rho) + (1 - s) * keep / 2


def choi_matrix(channel, dim: int = 2) -> np.ndarray:
    """``sum_ij |i><j| (x) channel(|i><j|)`` for a linear single-qubit map."""
    out = np.zeros((dim * dim, dim * dim), dtype=complex)
    for i in range(dim):
        for j in range(dim):
            e = np.zeros((dim, dim), dtype=complex)
            e[i, j] = 1.0
            out += np.kron(e, channel(e))
    return out


def optimal_not_map(n_copies: int):
    """The single-qubit effective NOT as a linear map on arbitrary operators."""
    s = not_shrink(n_copies)

    def apply(op):
        op = np.asarray(op, dtype=complex)
        tr = np.trace(op)
        return s * (tr * np.eye(2) - op) + (1 - s) * tr * np.eye(2) / 2

    return apply
