"""Closed-form fidelities and their block-structure derivation.

Every function returns the root fidelity ``tr sqrt(sqrt(rho) sigma sqrt(rho))``.
Angles follow ``channels.frame_rotation``: the closed forms depend on
``sin^2 theta`` and are pi-periodic.

Radicands are evaluated in factored form, e.g.
``(1 - t)^2 - 4 t^2 sin^2 = (1 - t)^2 cos^2 + (1 - 3t)(1 + t) sin^2``, so that
they vanish exactly on the boundary of the separable region instead of
leaving an ``O(sqrt(eps))`` residue.
"""

from __future__ import annotations

import numpy as np

from .channels import (
    apply_channel,
    classical_seed,
    frame_rotation,
    misaligned_channel,
    not_shrink,
    optimal_not_effective,
    preparation_channel,
)
from .linalg import EPS_NUM, uhlmann_fidelity
from .measures import shifted_radicands
from .states import BellDiagonal, StateClass, _require_physical, bell_eigenvalues, is_separable, to_density, werner

RADICAND_TOL = 1e-12


def _root(x: float, label: str) -> float:
    if x < -RADICAND_TOL:
        raise ValueError(f"radicand {label} = {x:.3e} is negative")
    return float(np.sqrt(max(x, 0.0)))


def tr_sqrt_2x2(m) -> float:
    """``tr sqrt(M) = sqrt(tr M + 2 sqrt(det M))`` for a 2x2 PSD matrix."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got {m.shape}")
    det = float(np.linalg.det(m).real)
    tr = float(np.trace(m).real)
    if det < -RADICAND_TOL * max(1.0, tr * tr) or tr < -RADICAND_TOL:
        raise ValueError(f"matrix is not positive semidefinite (det {det:.3e}, trace {tr:.3e})")
    return float(np.sqrt(max(tr + 2.0 * np.sqrt(max(det, 0.0)), 0.0)))


def x_blocks(s: BellDiagonal) -> tuple[np.ndarray, np.ndarray]:
    """Outer block (rows/cols |00>, |11>) and inner block (|01>, |10>)."""
    t1, t2, t3 = s
    a = 0.25 * np.array([[1 + t3, t1 - t2], [t1 - t2, 1 + t3]], dtype=complex)
    b = 0.25 * np.array([[1 - t3, t1 + t2], [t1 + t2, 1 - t3]], dtype=complex)
    return a, b


def fidelity_block(s: BellDiagonal, theta: float) -> float:
    """Fidelity between ``to_density(s)`` and its copy rotated on Bob's side.

    Uses the direct-sum structure: the Bob rotation acts as ``R`` on the
    outer block and ``R^dagger`` on the inner one, and each block
    contributes ``sqrt(tr(A R A R^dagger) + 2 det A)``.
    """
    _require_physical(s)
    a, b = x_blocks(s)
    r = frame_rotation(theta)
    rd = r.conj().T
    total = 0.0
    for block, u in ((a, r), (b, rd)):
        rotated = u @ block @ u.conj().T
        total += _root(float(np.trace(block @ rotated).real + 2.0 * np.linalg.det(block).real), "block")
    return total


def fidelity_misaligned_closed(s: BellDiagonal, cls: StateClass, theta: float) -> float:
    """Fidelity of the ideal and misaligned preparations of class ``cls``.

    For the parallel class with ``s = (t1, t2, t3)``::

        F = 1/2 sqrt((1+t3)^2 - (t1-t2)^2 sin^2) + 1/2 sqrt((1-t3)^2 - (t1+t2)^2 sin^2)

    and the anti-parallel value follows from ``t -> -t``.
    """
    cls = StateClass.parse(cls)
    if min(s) < -EPS_NUM:
        raise ValueError(f"expected non-negative coefficients, got {s}")
    if not is_separable(s):
        raise ValueError(f"{s} is not separable")
    if cls is StateClass.ANTIPARALLEL:
        s = -s
    elif cls is not StateClass.PARALLEL:
        raise ValueError("class must be PARALLEL or ANTIPARALLEL")
    lam = np.clip(bell_eigenvalues(s), 0.0, None)
    sin2 = np.sin(theta) ** 2
    cos2 = np.cos(theta) ** 2
    outer = (1 + s.t3) ** 2 * cos2 + 16.0 * lam[1] * lam[2] * sin2
    inner = (1 - s.t3) ** 2 * cos2 + 16.0 * lam[0] * lam[3] * sin2
    return 0.5 * _root(outer, "outer") + 0.5 * _root(inner, "inner")


def fidelity_difference_sq(s: BellDiagonal, theta: float) -> float:
    """``F_par^2 - F_anti^2 = (sqrt(a_th - 8 p sin^2) - sqrt(a_th + 8 p sin^2)) / 2``.

    ``p = t1 t2 t3`` and ``a_th`` is ``def_a`` with ``t1, t2`` scaled by
    ``sin theta``.
    """
    if min(s) < -EPS_NUM:
        raise ValueError(f"expected non-negative coefficients, got {s}")
    if not is_separable(s):
        raise ValueError(f"{s} is not separable")
    sn = np.sin(theta)
    minus, plus = shifted_radicands(s.t1 * sn, s.t2 * sn, s.t3)
    return 0.5 * (_root(minus, "a - 8 t1 t2 t3 sin^2") - _root(plus, "a + 8 t1 t2 t3 sin^2"))


def fidelity_werner_pair(t: float, t_prime: float) -> float:
    """Fidelity of ``W(t) = (1-t) I/4 + t |singlet><singlet|`` and ``W(t')``."""
    for x in (t, t_prime):
        if not -1 / 3 - EPS_NUM <= x <= 1 + EPS_NUM:
            raise ValueError(f"W({x!r}) is not physical; need -1/3 <= t <= 1")
    low = _root((1 - t) * (1 - t_prime), "(1-t)(1-t')")
    high = _root((1 + 3 * t) * (1 + 3 * t_prime), "(1+3t)(1+3t')")
    return 0.25 * (3.0 * low + high)


def _check_werner_t(t: float) -> None:
    if not -EPS_NUM <= t <= 1 / 3 + EPS_NUM:
        raise ValueError(f"t must lie in [0, 1/3], got {t!r}")


def fidelity_method_a(t: float, theta: float) -> float:
    """Misaligned preparation from the parallel seed versus the parallel
    Werner target: ``(1 + t + sqrt((1-t)^2 - 4 t^2 sin^2)) / 2``."""
    _check_werner_t(t)
    radicand = (1 - t) ** 2 * np.cos(theta) ** 2 + (1 - 3 * t) * (1 + t) * np.sin(theta) ** 2
    return 0.5 * (1 + t + _root(radicand, "(1-t)^2 - 4t^2 sin^2"))


def method_b_state(t: float, theta: float, n_copies: int) -> np.ndarray:
    """Misaligned anti-parallel preparation followed by Bob's optimal NOT."""
    _check_werner_t(t)
    prepared = apply_channel(misaligned_channel(BellDiagonal(t, t, t), theta), classical_seed(StateClass.ANTIPARALLEL))
    return optimal_not_effective(prepared, n_copies, side="B")


def fidelity_method_b(t: float, theta: float, n_copies: int) -> float:
    """Fidelity of the method-B state with the parallel Werner target,
    by explicit construction and the generic Uhlmann fidelity."""
    target = to_density(werner(t, StateClass.PARALLEL))
    return uhlmann_fidelity(method_b_state(t, theta, n_copies), target)


def fidelity_method_b_closed(t: float, theta: float, n_copies: int) -> float:
    """Block-structure evaluation of ``fidelity_method_b``.

    With ``s = N/(N+2)`` the method-B state is the misaligned parallel state
    with parameter ``s t``, so::

        F_B = sqrt((1+t)(1+st)) / 2
              + sqrt((1-t)(1-st) + 4 s t^2 cos 2theta
                     + sqrt([(1-t)^2 - 4t^2][(1-st)^2 - 4 s^2 t^2])) / (2 sqrt 2)
    """
    _check_werner_t(t)
    s = not_shrink(n_copies)
    st = s * t
    outer = np.sqrt((1 + t) * (1 + st))
    det_term = _root((1 - 3 * t) * (1 + t) * (1 - 3 * st) * (1 + st), "det product")
    inner = (1 - t) * (1 - st) + 4 * s * t * t * np.cos(2 * theta) + det_term
    return 0.5 * outer + _root(inner, "inner") / (2 * np.sqrt(2))


def fidelity_misaligned_oracle(s: BellDiagonal, theta: float, cls: StateClass = StateClass.PARALLEL) -> float:
    """Generic Uhlmann fidelity of the ideal and misaligned preparations."""
    seed = classical_seed(cls)
    ideal = apply_channel(preparation_channel(s), seed)
    actual = apply_channel(misaligned_channel(s, theta), seed)
    return uhlmann_fidelity(ideal, actual)
