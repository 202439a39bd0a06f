"""Two-qubit states with maximally mixed marginals.

A state in this family is fixed by the diagonal of its correlation matrix,
``rho = (I + t1 XX + t2 YY + t3 ZZ) / 4``. Physical triples fill a
tetrahedron; separable ones fill the inscribed octahedron
``|t1| + |t2| + |t3| <= 1``. The sign of ``t1 t2 t3`` splits the family into
a parallel and an anti-parallel class that no local unitary connects.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .linalg import (
    EPS_NUM,
    EPS_PSD,
    EPS_TRACE,
    I2,
    PAULIS,
    X,
    Y,
    Z,
    check_density,
    eig_hermitian,
    kron,
    partial_trace,
)


class StateClass(enum.Enum):
    PARALLEL = "parallel"
    ANTIPARALLEL = "antiparallel"
    BOUNDARY = "boundary"

    @classmethod
    def parse(cls, value) -> "StateClass":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "").replace("_", "")
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown state class {value!r}")


@dataclass(frozen=True)
class BellDiagonal:
    t1: float
    t2: float
    t3: float

    def __iter__(self):
        return iter((self.t1, self.t2, self.t3))

    def as_array(self) -> np.ndarray:
        return np.array([self.t1, self.t2, self.t3], dtype=float)

    def __neg__(self) -> "BellDiagonal":
        return BellDiagonal(-self.t1, -self.t2, -self.t3)

    def scaled(self, factor: float) -> "BellDiagonal":
        return BellDiagonal(factor * self.t1, factor * self.t2, factor * self.t3)

    def to_csv(self) -> str:
        return f"{self.t1!r},{self.t2!r},{self.t3!r}"

    @classmethod
    def from_csv(cls, text: str) -> "BellDiagonal":
        parts = [p.strip() for p in text.strip().split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected 't1,t2,t3', got {text!r}")
        return cls(*(float(p) for p in parts))


@dataclass(frozen=True)
class Ensemble:
    """Convex decomposition ``sum_k w_k rho_k`` of a state."""

    terms: tuple[tuple[float, np.ndarray], ...]

    def __post_init__(self):
        weights = np.array([w for w, _ in self.terms], dtype=float)
        if np.any(weights < 0):
            raise ValueError("ensemble weights must be non-negative")
        if abs(weights.sum() - 1.0) > EPS_TRACE:
            raise ValueError(f"ensemble weights sum to {weights.sum()!r}")

    def __len__(self) -> int:
        return len(self.terms)

    def density(self) -> np.ndarray:
        return sum(w * rho for w, rho in self.terms)


def _projector(axis: int, sign: int) -> np.ndarray:
    """``(I + sign * sigma_axis) / 2`` for axis in 1..3."""
    return 0.5 * (I2 + sign * PAULIS[axis])


def bell_eigenvalues(s: BellDiagonal) -> np.ndarray:
    """Spectrum ``(lambda_0, .., lambda_3)`` of ``to_density(s)``.

    ``lambda_0`` belongs to the singlet, ``lambda_k`` to the Bell state
    obtained from it by ``sigma_k`` on one qubit.
    """
    t1, t2, t3 = s
    return 0.25 * np.array(
        [
            1 - (t1 + t2 + t3),
            1 - t1 + t2 + t3,
            1 + t1 - t2 + t3,
            1 + t1 + t2 - t3,
        ]
    )


def is_physical(s: BellDiagonal) -> bool:
    return bool(bell_eigenvalues(s).min() >= -EPS_PSD)


def _require_physical(s: BellDiagonal) -> None:
    if not is_physical(s):
        lam = bell_eigenvalues(s)
        raise ValueError(f"{s} is not a physical state: Bell eigenvalue {lam.min():.3e} < 0")


def is_separable(s: BellDiagonal) -> bool:
    _require_physical(s)
    return bool(abs(s.t1) + abs(s.t2) + abs(s.t3) <= 1 + EPS_NUM)


def class_of(s: BellDiagonal, atol: float = 0.0) -> StateClass:
    prod = s.t1 * s.t2 * s.t3
    if abs(prod) <= atol:
        return StateClass.BOUNDARY
    return StateClass.PARALLEL if prod > 0 else StateClass.ANTIPARALLEL


def to_density(s: BellDiagonal) -> np.ndarray:
    _require_physical(s)
    t1, t2, t3 = s
    return 0.25 * (np.eye(4) + t1 * kron(X, X) + t2 * kron(Y, Y) + t3 * kron(Z, Z))


def correlation_matrix(rho) -> np.ndarray:
    """Real 4x4 matrix ``R[mu, nu] = tr(rho sigma_mu (x) sigma_nu)``."""
    rho = np.asarray(rho, dtype=complex)
    return np.array([[np.trace(rho @ kron(a, b)).real for b in PAULIS] for a in PAULIS])


def from_density(rho) -> BellDiagonal:
    """Read ``(t1, t2, t3)`` off a Bell-diagonal density matrix.

    States with local Bloch vectors or off-diagonal correlations are
    rejected instead of being rotated into diagonal form.
    """
    rho = check_density(rho)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a two-qubit state, got shape {rho.shape}")
    r = correlation_matrix(rho)
    labels = "IXYZ"
    for mu in range(4):
        for nu in range(4):
            if mu == nu or (mu == 0 and nu == 0):
                continue
            if abs(r[mu, nu]) > EPS_NUM:
                raise ValueError(
                    f"state is not Bell-diagonal: tr(rho {labels[mu]}{labels[nu]}) = {r[mu, nu]:.3e}"
                )
    return BellDiagonal(float(r[1, 1]), float(r[2, 2]), float(r[3, 3]))


def ensemble_decomposition(s: BellDiagonal, cls: StateClass) -> Ensemble:
    """Product-state ensemble for the class representative with ``|t_i|``.

    ``s`` must have non-negative entries. For ``PARALLEL`` the ensemble
    realizes ``to_density(s)`` with aligned spins ``P_i^+ P_i^+``,
    ``P_i^- P_i^-``; for ``ANTIPARALLEL`` it realizes ``to_density(-s)``
    with opposite spins. The maximally mixed part stays a single ``I/4``
    term and zero-weight terms are dropped.
    """
    cls = StateClass.parse(cls)
    if cls is StateClass.BOUNDARY:
        raise ValueError("choose PARALLEL or ANTIPARALLEL for the decomposition")
    t = s.as_array()
    if np.any(t < -EPS_NUM):
        raise ValueError(f"decomposition needs non-negative coefficients, got {s}")
    t = np.clip(t, 0.0, None)
    mixed = 1.0 - t.sum()
    if mixed < -EPS_NUM:
        raise ValueError(f"{s} lies outside the separable octahedron (t1+t2+t3 = {t.sum():.6g})")
    mixed = max(mixed, 0.0)

    partner = 1 if cls is StateClass.PARALLEL else -1
    terms = []
    if mixed > 0:
        terms.append((mixed, np.eye(4, dtype=complex) / 4))
    for axis, ti in enumerate(t, start=1):
        if ti == 0:
            continue
        for sign in (1, -1):
            state = kron(_projector(axis, sign), _projector(axis, partner * sign))
            terms.append((ti / 2, state))
    total = sum(w for w, _ in terms)
    return Ensemble(tuple((w / total, rho) for w, rho in terms))


def werner(t: float, cls: StateClass, *, allow_entangled: bool = False) -> BellDiagonal:
    """Isotropic state: ``(t, t, t)`` for parallel, ``(-t, -t, -t)`` otherwise.

    By default only the separable range ``0 <= t <= 1/3`` is accepted. With
    ``allow_entangled`` any ``t`` giving a physical state is allowed.
    """
    cls = StateClass.parse(cls)
    if cls is StateClass.BOUNDARY:
        raise ValueError("Werner class must be PARALLEL or ANTIPARALLEL")
    sign = 1.0 if cls is StateClass.PARALLEL else -1.0
    state = BellDiagonal(sign * t, sign * t, sign * t)
    if allow_entangled:
        _require_physical(state)
    elif not (-EPS_NUM <= t <= 1 / 3 + EPS_NUM):
        raise ValueError(f"separable Werner parameter must lie in [0, 1/3], got {t!r}")
    return state


def correlation_rank(rho, rel_tol: float = 1e-9) -> int:
    """Number of singular values of the Pauli coefficient matrix above
    ``rel_tol`` times the largest one."""
    r = correlation_matrix(check_density(rho))
    evals, _ = eig_hermitian(r @ r.T)
    sv = np.sqrt(np.clip(evals, 0.0, None))
    return int(np.sum(sv > rel_tol * sv[0]))


def marginals(rho) -> tuple[np.ndarray, np.ndarray]:
    return partial_trace(rho, "A"), partial_trace(rho, "B")

